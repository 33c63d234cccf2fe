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

//! Tables frozen from `oracle/linkrate_oracle.py` (mpmath, 60 digits).

pub const CVQKD: [(f64, f64); 20] = [
    (0.5, 0.67779436390300614),
    (1.0, 0.64177219038234604),
    (2.0, 0.57721266736502987),
    (3.0, 0.52101617184634291),
    (5.0, 0.42803955438510751),
    (7.5, 0.33846794211793073),
    (10.0, 0.2696364490303331),
    (12.5, 0.21560559494275451),
    (15.0, 0.17253286925402144),
    (17.5, 0.13780254921145351),
    (20.0, 0.10956159469191294),
    (22.5, 0.086454470772214493),
    (25.0, 0.067463140182966471),
    (27.5, 0.05180613816575407),
    (30.0, 0.03887252583358192),
    (32.5, 0.028177300409289493),
    (35.0, 0.019330472414555048),
    (37.5, 0.01201510940926723),
    (40.0, 0.0059714135821645133),
    (42.5, 0.0009849496018777818),
];
pub const THERMAL: [(f64, f64, f64, f64); 20] = [
    (1.0, 4.4736935165749646, 4.2115172746808394, 4.2085649361203795),
    (2.0, 3.5065303802087765, 3.3522989904180457, 3.3492786837615708),
    (5.0, 2.2815843413384318, 2.2057188564682933, 2.2024885364577327),
    (10.0, 1.4381405161347793, 1.3931058551603062, 1.3895052653149851),
    (15.0, 1.0034297056080473, 0.96970418710336172, 0.96570838548940889),
    (20.0, 0.7324214653612658, 0.70467672246563543, 0.70026141404876369),
    (30.0, 0.41732577916269975, 0.3959587912020434, 0.39063526922630972),
    (40.0, 0.24894651201558545, 0.23111262454748273, 0.22479650156368634),
    (50.0, 0.15200309344504998, 0.13658942689922161, 0.12920736446613858),
    (60.0, 0.094026456468857319, 0.080514557448601852, 0.072005014135729255),
    (70.0, 0.058609261295449226, 0.04673520208309126, 0.037048155132140455),
    (80.0, 0.036701768755190148, 0.026324767341380261, 0.015420699640684301),
    (90.0, 0.023048307336104515, 0.014091500750583809, 0.0019399708386349511),
    (100.0, 0.014499569695115077, 0.0069206204961973893, 0.0),
    (110.0, 0.0091316290517087334, 0.0029072422856449462, 0.0),
    (120.0, 0.0057549354282652325, 0.00087240882910067282, 0.0),
    (130.0, 0.0036284451292873754, 8.0967877134746361e-5, 0.0),
    (140.0, 0.0022883314089207226, 0.0, 0.0),
    (160.0, 0.00091056632636778918, 0.0, 0.0),
    (200.0, 0.0001442767180450352, 0.0, 0.0),
];
