// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Configuration-driven experiments: config parsing and validation, seeded
//! sweep execution, result files and plot-ready tables.

mod config;
mod plot;
mod run;

pub use config::{
    AnalysisSection, ExperimentConfig, LinkSection, OutputSection, ProtocolSection, SamplingSection, SweepPoint,
    SweepSection, TopologySection,
};
pub use plot::{emit_plot_data, PlotKind};
pub use run::{read_results, run_experiment, ExperimentOutput, ResultRecord, RunOptions, Summary, CSV_HEADER};
