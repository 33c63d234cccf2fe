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

//! Invariant checks shared by the property suite and the acceptance run.
//! Each check draws one instance from `seed` and returns a description of
//! the first violation.

use std::collections::BTreeSet;

use qnetr::exec::Executor;
use qnetr::flow::{max_flow, protocol_rate, Forwarding};
use qnetr::linkrate::{
    cvqkd_rate, entropic_h, holevo_h, pure_loss_capacity, thermal_bounds, transmissivity, CvQkdParams, FiberParams,
    RateModel,
};
use qnetr::metrics::{critical_density_performance, CriticalEstimate, ensemble_evaluate_many, EnsembleConfig, NetworkClass, PairSampling};
use qnetr::netgen::{generate_scale_free, generate_waxman, prune, PruneParams, ScaleFreeParams, WaxmanParams};
use qnetr::netmodel::{subnetwork, validate_route, Disjointness};
use qnetr::routing::{
    dijkstra_tree, mdp_explore, mdp_reconstruct, run_protocol, single_path_rate, DeadEnd, IarParams, MinHops,
    ProtocolKind, ProtocolSpec, Routing, StopRule,
};
use qnetr::{seed, EdgeId, Network, NodeId, RouteSet};
use rand::Rng;

use super::{node, random_instance};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn thermal(nbar: f64) -> RateModel {
    RateModel::ThermalUpper {
        fiber: FiberParams { gamma: 0.02, nbar },
    }
}

/// A pruned thermal-upper Waxman network of moderate size.
pub fn waxman_instance(s: u64) -> (Network, Vec<f64>) {
    let mut rng = seed::rng(s);
    let class = NetworkClass::Waxman(WaxmanParams {
        n: rng.gen_range(10..40),
        radius_km: rng.gen_range(60.0..160.0),
        beta: 1.0,
        r0_km: 100.0,
    });
    let (net, rates) = class.realise(&thermal(1.0 / 500.0), &PruneParams::default(), s).unwrap();
    (net, rates.into_inner())
}

fn instance(s: u64) -> (Network, Vec<f64>) {
    if s % 2 == 0 {
        waxman_instance(s)
    } else {
        let n = 6 + (s / 2 % 10) as usize;
        random_instance(s, n, 0.4)
    }
}

fn pick_pair(net: &Network, s: u64) -> (NodeId, NodeId) {
    let mut rng = seed::rng(seed::derive(s, &[99]));
    let n = net.node_count();
    let a = rng.gen_range(0..n);
    let b = (a + rng.gen_range(1..n)) % n;
    (node(a), node(b))
}

fn all_edges(net: &Network) -> Vec<EdgeId> {
    (0..net.edge_count()).map(EdgeId::new).collect()
}

fn rel_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1e-12)
}

// netmodel

pub fn adjacency_symmetry(s: u64) -> Check {
    let (net, _) = instance(s);
    let mut total = 0;
    for (i, e) in net.edges().iter().enumerate() {
        let id = EdgeId::new(i);
        ensure!(net.neighbors(e.u).contains(&(e.v, id)), "edge {i} missing from u's list");
        ensure!(net.neighbors(e.v).contains(&(e.u, id)), "edge {i} missing from v's list");
    }
    for x in net.nodes() {
        total += net.degree(x);
    }
    ensure!(total == 2 * net.edge_count(), "degree sum {total} != 2|E|");
    Ok(())
}

pub fn subnetwork_components(s: u64) -> Check {
    let (net, _) = instance(s);
    let mut rng = seed::rng(seed::derive(s, &[7]));
    let keep: Vec<EdgeId> = all_edges(&net).into_iter().filter(|_| rng.gen_bool(0.6)).collect();
    let sub = subnetwork(&net, keep.iter().copied()).map_err(|e| e.to_string())?;
    ensure!(sub.edge_count() == keep.len(), "subnetwork has {} edges, kept {}", sub.edge_count(), keep.len());
    let (orig, part) = (net.component_labels(), sub.component_labels());
    for x in 0..net.node_count() {
        for y in 0..net.node_count() {
            ensure!(part[x] != part[y] || orig[x] == orig[y], "nodes {x}, {y} merged by removing edges");
        }
    }
    Ok(())
}

pub fn route_validity_survives_restriction(s: u64) -> Check {
    let (net, rates) = instance(s);
    let (a, b) = pick_pair(&net, s);
    let (Some(route), _) = single_path_rate(&net, &rates, a, b).map_err(|e| e.to_string())? else {
        return Ok(());
    };
    ensure!(validate_route(&net, &route), "widest route invalid in its own network");
    let sub = subnetwork(&net, route.edge_ids(&net).unwrap()).map_err(|e| e.to_string())?;
    ensure!(validate_route(&sub, &route), "route invalid in the subnetwork of its edges");
    Ok(())
}

// linkrate

fn models(s: u64) -> Vec<RateModel> {
    let mut rng = seed::rng(s);
    let fiber = FiberParams {
        gamma: rng.gen_range(0.01..0.05),
        nbar: rng.gen_range(0.0..0.02),
    };
    let qkd = CvQkdParams {
        eta_eff: rng.gen_range(0.5..1.0),
        beta_rec: rng.gen_range(0.9..1.0),
        mu: rng.gen_range(2.0..50.0),
        nbar: fiber.nbar,
    };
    vec![
        RateModel::PureLoss { fiber },
        RateModel::ThermalUpper { fiber },
        RateModel::ThermalLower { fiber },
        RateModel::Cvqkd { fiber, qkd },
    ]
}

pub fn rate_monotone_in_distance(s: u64) -> Check {
    for m in models(s) {
        let mut prev = f64::INFINITY;
        for i in 1..=100 {
            let d = 2.5 * i as f64;
            let k = m.rate(d).map_err(|e| e.to_string())?;
            ensure!(k <= prev, "{} increases at d = {d}: {prev} -> {k}", m.name());
            prev = k;
        }
    }
    Ok(())
}

pub fn bound_ordering(s: u64) -> Check {
    let mut rng = seed::rng(s);
    let nbar = rng.gen_range(1e-4..0.05);
    for _ in 0..50 {
        let eta = rng.gen_range(1e-4..0.9999f64);
        let b = thermal_bounds(eta, nbar).map_err(|e| e.to_string())?;
        let plob = pure_loss_capacity(eta);
        ensure!(b.lower <= b.upper && b.upper <= plob, "ordering fails at eta = {eta}, nbar = {nbar}");
        let z = thermal_bounds(eta, 0.0).unwrap();
        ensure!(z.lower == plob && z.upper == plob, "bounds differ from plob at nbar = 0");
    }
    Ok(())
}

pub fn key_rate_below_capacity(s: u64) -> Check {
    let m = models(s);
    let RateModel::Cvqkd { fiber, qkd } = m[3] else { unreachable!() };
    for i in 1..=60 {
        let d = i as f64 * 2.0;
        let tau = qkd.eta_eff * transmissivity(d, fiber.gamma).unwrap();
        let up = thermal_bounds(tau, qkd.nbar).unwrap().upper;
        let k = cvqkd_rate(d, &qkd, &fiber).map_err(|e| e.to_string())?;
        ensure!(k <= up + 1e-12, "key rate {k} beats upper bound {up} at d = {d}");
    }
    Ok(())
}

pub fn entropy_identity(s: u64) -> Check {
    let mut rng = seed::rng(s);
    for _ in 0..50 {
        let x = 10f64.powf(rng.gen_range(-8.0..3.0));
        let (a, b) = (holevo_h(2.0 * x + 1.0), entropic_h(x).unwrap());
        ensure!((a - b).abs() <= 1e-12 * b.max(1.0), "h~(2x+1) = {a} but h(x) = {b} at x = {x}");
    }
    Ok(())
}

// netgen

pub fn generation_is_deterministic(s: u64) -> Check {
    let w = WaxmanParams {
        n: 60,
        radius_km: 150.0,
        beta: 0.8,
        r0_km: 60.0,
    };
    let f = ScaleFreeParams {
        n: 60,
        n0: 5,
        m: 3,
        sigma_deg: 1.0,
        sigma_r: 1.0,
        radius_km: 150.0,
    };
    let seeds: Vec<u64> = (0..6).map(|k| s.wrapping_add(k)).collect();
    let build = |e: Executor| {
        e.map(seeds.clone(), |k| (generate_waxman(&w, k).unwrap(), generate_scale_free(&f, k).unwrap()))
    };
    let seq = build(Executor::Sequential);
    ensure!(seq == build(Executor::with_workers(3)), "networks depend on the thread count");
    ensure!(seq == build(Executor::Sequential), "networks differ between runs");
    Ok(())
}

pub fn scale_free_structure(s: u64) -> Check {
    let mut rng = seed::rng(s);
    let n0 = rng.gen_range(2..8);
    let p = ScaleFreeParams {
        n: rng.gen_range(n0..80),
        n0,
        m: rng.gen_range(1..=n0),
        sigma_deg: rng.gen_range(0.0..2.0),
        sigma_r: rng.gen_range(0.0..3.0),
        radius_km: 100.0,
    };
    let net = generate_scale_free(&p, s).map_err(|e| e.to_string())?;
    ensure!(net.component_labels().iter().all(|&l| l == 0), "scale-free network is disconnected: {p:?}");
    for x in p.n0..p.n {
        ensure!(net.degree(node(x)) >= p.m, "node {x} has degree {} < m", net.degree(node(x)));
    }
    Ok(())
}

pub fn pruned_rates_above_threshold(s: u64) -> Check {
    let mut rng = seed::rng(s);
    let w = WaxmanParams {
        n: 50,
        radius_km: rng.gen_range(50.0..300.0),
        beta: 1.0,
        r0_km: 100.0,
    };
    let eps = 10f64.powf(rng.gen_range(-12.0..-1.0));
    let net = generate_waxman(&w, s).unwrap();
    let rates = qnetr::linkrate::assign_rates(&net, &thermal(1.0 / 500.0)).unwrap();
    let (pruned, kept) = prune(&net, &rates, &PruneParams { epsilon: eps }).map_err(|e| e.to_string())?;
    ensure!(kept.iter().all(|&k| k >= eps), "pruned network keeps a rate below {eps}");
    let expect = rates.iter().filter(|&&k| k >= eps).count();
    ensure!(pruned.edge_count() == expect, "kept {} edges, expected {expect}", pruned.edge_count());
    ensure!(pruned.node_count() == net.node_count(), "pruning changed the node set");
    Ok(())
}

// flow

pub fn flow_duality(s: u64) -> Check {
    let (net, rates) = instance(s);
    let (a, b) = pick_pair(&net, s);
    let f = max_flow(&net, &rates, a, b).map_err(|e| e.to_string())?;
    ensure!(f.min_cut.is_valid_for(&net, a, b), "witness does not separate the pair");
    ensure!(rel_eq(f.value, f.min_cut.rate(&rates)), "flow {} vs cut {}", f.value, f.min_cut.rate(&rates));
    Ok(())
}

pub fn flow_monotone(s: u64) -> Check {
    let (net, rates) = instance(s);
    let (a, b) = pick_pair(&net, s);
    let base = max_flow(&net, &rates, a, b).unwrap().value;
    let mut rng = seed::rng(seed::derive(s, &[5]));
    if net.edge_count() > 0 {
        let mut more = rates.clone();
        let e = rng.gen_range(0..more.len());
        more[e] *= rng.gen_range(1.0..3.0);
        let up = max_flow(&net, &more, a, b).unwrap().value;
        ensure!(up >= base * (1.0 - 1e-12), "raising a rate lowered the flow: {base} -> {up}");
    }
    // Drop one edge and add it back.
    if net.edge_count() > 1 {
        let drop = rng.gen_range(0..net.edge_count());
        let keep: Vec<EdgeId> = all_edges(&net).into_iter().filter(|e| e.index() != drop).collect();
        let less = qnetr::flow::max_flow_value_on(&net, &rates, &keep, a, b).unwrap();
        ensure!(less <= base * (1.0 + 1e-12), "adding an edge lowered the flow: {less} -> {base}");
    }
    Ok(())
}

pub fn flooding_dominates(s: u64) -> Check {
    let (net, rates) = instance(s);
    let (a, b) = pick_pair(&net, s);
    let fl = protocol_rate(&net, &rates, a, b, Forwarding::Flooding).unwrap();
    for kind in [
        ProtocolKind::SinglePath,
        ProtocolKind::MdpFixedM(1),
        ProtocolKind::MdpFixedM(3),
        ProtocolKind::MdpRateTarget(1.0),
        ProtocolKind::IterDijkstraFixedM(3),
    ] {
        let out = run_protocol(&net, &rates, a, b, &ProtocolSpec::new(kind)).map_err(|e| e.to_string())?;
        ensure!(out.rate <= fl * (1.0 + 1e-12), "{kind:?} rate {} beats flooding {fl}", out.rate);
    }
    Ok(())
}

// routing

fn intermediates(set: &RouteSet) -> Vec<BTreeSet<NodeId>> {
    set.routes
        .iter()
        .map(|r| {
            let nodes = r.nodes();
            nodes[1..nodes.len() - 1].iter().copied().collect()
        })
        .collect()
}

pub fn route_sets_disjoint(s: u64) -> Check {
    let (net, rates) = instance(s);
    let (a, b) = pick_pair(&net, s);
    for mode in [Disjointness::Edge, Disjointness::Node] {
        for kind in [ProtocolKind::MdpFixedM(5), ProtocolKind::IterDijkstraFixedM(5), ProtocolKind::MdpRateTarget(3.0)] {
            let spec = ProtocolSpec {
                disjointness: mode,
                ..ProtocolSpec::new(kind)
            };
            let out = run_protocol(&net, &rates, a, b, &spec).map_err(|e| e.to_string())?;
            let Routing::Routes(set) = out.routing else { return Err("route protocol flooded".into()) };
            let total: usize = set.routes.iter().map(|r| r.len()).sum();
            if mode == Disjointness::Edge {
                ensure!(total == out.consumption_edges, "{kind:?}: sum of lengths {total} != |E_P| {}", out.consumption_edges);
            } else {
                let mid = intermediates(&set);
                for i in 0..mid.len() {
                    for j in i + 1..mid.len() {
                        ensure!(mid[i].is_disjoint(&mid[j]), "{kind:?}: routes {i}, {j} share a node");
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn rate_sandwich(s: u64) -> Check {
    let (net, rates) = instance(s);
    let (a, b) = pick_pair(&net, s);
    let fl = run_protocol(&net, &rates, a, b, &ProtocolSpec::new(ProtocolKind::Flooding)).unwrap();
    let sp = run_protocol(&net, &rates, a, b, &ProtocolSpec::new(ProtocolKind::SinglePath)).unwrap();
    let edges = net.edge_count();
    for m in 1..=4 {
        // Iterative Dijkstra starts from the widest route, so the lower
        // end of the sandwich applies to it directly.
        let it = run_protocol(&net, &rates, a, b, &ProtocolSpec::new(ProtocolKind::IterDijkstraFixedM(m))).unwrap();
        ensure!(sp.rate <= it.rate * (1.0 + 1e-12), "M = {m}: single path {} > multi-path {}", sp.rate, it.rate);
        ensure!(it.rate <= fl.rate * (1.0 + 1e-12), "M = {m}: multi-path beats flooding");
        let md = run_protocol(&net, &rates, a, b, &ProtocolSpec::new(ProtocolKind::MdpFixedM(m))).unwrap();
        if let Routing::Routes(set) = &md.routing {
            if let Some(first) = set.routes.first() {
                let k1 = first.bottleneck(&net, &rates).unwrap();
                ensure!(md.rate >= k1 * (1.0 - 1e-12), "M = {m}: rate below the first route's bottleneck");
            }
        }
    }
    for delta in [0.01, 0.1, 1.0] {
        let rt = run_protocol(&net, &rates, a, b, &ProtocolSpec::new(ProtocolKind::MdpRateTarget(delta))).unwrap();
        ensure!(rt.consumption_edges <= fl.consumption_edges, "rate target uses more edges than flooding");
        ensure!(fl.consumption_edges == edges, "flooding does not use every edge");
        // A widest path reaching delta does not guarantee the target: an
        // earlier, cheaper route can take an edge the widest path needs.
        ensure!(rt.shortfall == (rt.rate < delta), "target {delta}: shortfall flag disagrees with rate {}", rt.rate);
        if sp.rate >= delta {
            // Any route set reaching a positive rate needs a complete path.
            let hops = net.hop_distances(a)[b.index()].unwrap();
            ensure!(sp.consumption_edges >= hops && rt.consumption_edges >= hops, "consumption below the hop distance");
        }
    }
    Ok(())
}

pub fn rate_monotone_in_m(s: u64) -> Check {
    let (net, rates) = instance(s);
    let (a, b) = pick_pair(&net, s);
    if rates.iter().any(|&k| k <= 0.0) {
        return Ok(());
    }
    let matrix = mdp_explore(&net, &rates, &IarParams::default(), a).unwrap();
    let mut prev: Option<RouteSet> = None;
    let mut prev_rate = 0.0;
    for m in 1..=6 {
        for dead_end in [DeadEnd::Retreat] {
            let rec = mdp_reconstruct(&matrix, &net, &rates, b, StopRule::FixedM(m), Disjointness::Edge, dead_end).unwrap();
            let k = if rec.routes.is_empty() {
                0.0
            } else {
                protocol_rate(&net, &rates, a, b, Forwarding::Routes(&rec.routes)).unwrap()
            };
            ensure!(k >= prev_rate * (1.0 - 1e-12), "M = {m}: rate fell from {prev_rate} to {k}");
            if let Some(p) = &prev {
                ensure!(rec.routes.routes.starts_with(&p.routes), "M = {m}: route sets are not nested");
            }
            prev_rate = k;
            prev = Some(rec.routes);
        }
    }
    Ok(())
}

pub fn min_hops_is_bfs(s: u64) -> Check {
    let (net, rates) = instance(s);
    let (a, _) = pick_pair(&net, s);
    let tree = dijkstra_tree(&net, &rates, &MinHops, a).unwrap();
    for (x, h) in net.hop_distances(a).into_iter().enumerate() {
        if let Some(h) = h {
            ensure!(tree.cost[x] == h as f64, "node {x}: {} hops vs BFS {h}", tree.cost[x]);
            ensure!(tree.route_to(node(x)).map_or(0, |r| r.len()) == h, "route length differs from BFS at {x}");
        } else {
            ensure!(tree.route_to(node(x)).is_none(), "route to unreachable node {x}");
        }
    }
    Ok(())
}

// metrics

fn small_ensemble(s: u64) -> EnsembleConfig {
    let mut rng = seed::rng(s);
    EnsembleConfig {
        class: NetworkClass::Waxman(WaxmanParams {
            n: rng.gen_range(10..40),
            radius_km: rng.gen_range(80.0..200.0),
            beta: 1.0,
            r0_km: 100.0,
        }),
        model: thermal(1.0 / 500.0),
        prune: PruneParams::default(),
        pairs: rng.gen_range(1..6),
        networks: rng.gen_range(1..6),
        sampling: PairSampling::Random,
        seed: s,
        point: rng.gen_range(0..10),
    }
}

fn ensemble_specs() -> Vec<ProtocolSpec> {
    vec![
        ProtocolSpec::new(ProtocolKind::Flooding),
        ProtocolSpec::new(ProtocolKind::SinglePath),
        ProtocolSpec::new(ProtocolKind::MdpFixedM(2)),
        ProtocolSpec::new(ProtocolKind::MdpRateTarget(1.0)),
    ]
}

pub fn ensemble_flooding_dominates(s: u64) -> Check {
    let cfg = small_ensemble(s);
    let rep = ensemble_evaluate_many(&cfg, &ensemble_specs(), &Executor::Sequential).map_err(|e| e.to_string())?;
    let fl = &rep.results[0];
    for r in &rep.results[1..] {
        for (k, (&a, &b)) in fl.network_rates.iter().zip(&r.network_rates).enumerate() {
            ensure!(b <= a * (1.0 + 1e-12), "network {k}: {} rate {b} beats flooding {a}", r.protocol);
        }
        ensure!(r.mean_rate <= fl.mean_rate * (1.0 + 1e-12), "{} mean beats flooding", r.protocol);
    }
    Ok(())
}

pub fn consumption_in_unit_interval(s: u64) -> Check {
    let cfg = small_ensemble(s);
    let rep = ensemble_evaluate_many(&cfg, &ensemble_specs(), &Executor::Sequential).map_err(|e| e.to_string())?;
    for r in &rep.results {
        ensure!(r.network_consumption.iter().all(|e| (0.0..=1.0).contains(e)), "{} consumption outside [0, 1]", r.protocol);
    }
    for (k, &e) in rep.results[0].network_consumption.iter().enumerate() {
        let (net, _) = cfg.class.realise(&cfg.model, &cfg.prune, cfg.network_seed(k)).unwrap();
        let want = if net.edge_count() > 0 { 1.0 } else { 0.0 };
        ensure!(e == want, "flooding consumption {e} on network {k}");
    }
    Ok(())
}

pub fn ensemble_worker_independent(s: u64) -> Check {
    let cfg = small_ensemble(s);
    let specs = ensemble_specs();
    let seq = ensemble_evaluate_many(&cfg, &specs, &Executor::Sequential).map_err(|e| e.to_string())?;
    for w in [2, 3] {
        let par = ensemble_evaluate_many(&cfg, &specs, &Executor::with_workers(w)).unwrap();
        ensure!(seq == par, "result differs with {w} workers");
    }
    ensure!(seq == ensemble_evaluate_many(&cfg, &specs, &Executor::Sequential).unwrap(), "rerun differs");
    Ok(())
}

pub fn critical_density_monotone_in_threshold(s: u64) -> Check {
    let mut rng = seed::rng(s);
    let n = rng.gen_range(2..12);
    let mut rho = vec![rng.gen_range(1e-5..1e-4)];
    for _ in 1..n {
        let last = *rho.last().unwrap();
        rho.push(last * rng.gen_range(1.05..2.0));
    }
    let k: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..3.0)).collect();
    let mut thresholds: Vec<f64> = (0..8).map(|_| rng.gen_range(0.0..3.5)).collect();
    thresholds.sort_by(f64::total_cmp);
    let mut prev = f64::NEG_INFINITY;
    for t in thresholds {
        let est = critical_density_performance(&rho, &k, t).map_err(|e| e.to_string())?;
        let v = match est {
            CriticalEstimate::LeftCensored { at } => at,
            CriticalEstimate::Value { rho } => rho,
            CriticalEstimate::RightCensored { .. } => f64::INFINITY,
            CriticalEstimate::Undetermined => return Err("undetermined estimate on a valid grid".into()),
        };
        ensure!(v >= prev, "threshold {t}: rho* {v} below {prev}");
        prev = v;
    }
    Ok(())
}

/// Every invariant with a name, for the acceptance report.
pub const ALL: &[(&str, fn(u64) -> Check)] = &[
    ("adjacency_symmetry", adjacency_symmetry),
    ("subnetwork_components", subnetwork_components),
    ("route_validity_survives_restriction", route_validity_survives_restriction),
    ("rate_monotone_in_distance", rate_monotone_in_distance),
    ("bound_ordering", bound_ordering),
    ("key_rate_below_capacity", key_rate_below_capacity),
    ("entropy_identity", entropy_identity),
    ("generation_is_deterministic", generation_is_deterministic),
    ("scale_free_structure", scale_free_structure),
    ("pruned_rates_above_threshold", pruned_rates_above_threshold),
    ("flow_duality", flow_duality),
    ("flow_monotone", flow_monotone),
    ("flooding_dominates", flooding_dominates),
    ("route_sets_disjoint", route_sets_disjoint),
    ("rate_sandwich", rate_sandwich),
    ("rate_monotone_in_m", rate_monotone_in_m),
    ("min_hops_is_bfs", min_hops_is_bfs),
    ("ensemble_flooding_dominates", ensemble_flooding_dominates),
    ("consumption_in_unit_interval", consumption_in_unit_interval),
    ("ensemble_worker_independent", ensemble_worker_independent),
    ("critical_density_monotone_in_threshold", critical_density_monotone_in_threshold),
];
