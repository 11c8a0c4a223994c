//! Randomized oracle-equivalence suites. Trial `i` uses the seed
//! `trial_seed(seed, i)`, so any failing trial can be replayed alone.

use clap::ValueEnum;
use orthodim::algebra::PrimeField;
use orthodim::certificates::{split_no_certificate, verify_certificate};
use orthodim::gen::{gen_random, gnp, random_list_instance, trial_seed, GenConfig};
use orthodim::kernels::{kernel_real, verify_kernel_equivalence, Equivalence, KernelAlgorithm};
use orthodim::reductions::{col_to_od_vc, extract_coloring_from_orthrep};
use orthodim::solver::{check_coloring, decide_coloring, decide_od, fpt_decide_vc, verify_orthrep, SearchLimits};
use orthodim::{Error, Family, ModulatorInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// General kernel keeps the decision (Empty family, n <= 10, k <= 5).
    KernelGeneral,
    /// Real kernel stays within its size bound and keeps G[X].
    KernelReal,
    /// Hereditary kernel on the Empty family keeps the decision.
    KernelHereditary,
    /// Vertex-cover decider agrees with the plain decider, early accept included.
    Fpt,
    /// Coloring reduction: chi(G) <= d iff od(G') <= d, with coloring read-back.
    Reduction,
    /// Split NO-certificates verify on random list instances.
    Certificates,
}

impl Suite {
    pub fn noun(self) -> &'static str {
        match self {
            Suite::KernelGeneral | Suite::KernelHereditary | Suite::Reduction => "equivalent",
            Suite::KernelReal => "within bound",
            Suite::Fpt => "agree",
            Suite::Certificates => "certified",
        }
    }
}

pub struct SuiteReport {
    pub trials: u64,
    pub passed: u64,
    pub failures: Vec<(u64, String)>,
}

fn small_instance(seed: u64) -> Result<ModulatorInstance, Error> {
    let n = 4 + (seed % 7) as usize;
    let k = 1 + ((seed >> 16) % 5) as usize;
    gen_random(&GenConfig::new(n, k.min(n), Family::Empty, 0.5, seed))
}

fn equivalence(e: Equivalence) -> Result<(), String> {
    match e {
        Equivalence::Agree(_) => Ok(()),
        Equivalence::Disagree { input, kernel } => Err(format!("input {input}, kernel {kernel}")),
        Equivalence::Inconclusive(why) => Err(why),
    }
}

fn trial(suite: Suite, seed: u64, field: PrimeField, d: usize, limits: &SearchLimits) -> Result<(), String> {
    let err = |e: Error| e.to_string();
    match suite {
        Suite::KernelGeneral | Suite::KernelHereditary => {
            let inst = small_instance(seed).map_err(err)?;
            let alg = if suite == Suite::KernelGeneral { KernelAlgorithm::General } else { KernelAlgorithm::Hereditary };
            equivalence(verify_kernel_equivalence(&inst.graph, &inst.modulator, d, field, alg, limits).map_err(err)?)
        }
        Suite::KernelReal => {
            let inst = small_instance(seed).map_err(err)?;
            let out = kernel_real(&inst.graph, &inst.modulator, d).map_err(err)?;
            let k = inst.modulator.len();
            let (gx, _) = inst.graph.induced_subgraph(&inst.modulator).map_err(err)?;
            let (kx, _) = out.graph.induced_subgraph(&(0..k).collect::<Vec<_>>()).map_err(err)?;
            if !out.report.within_bound {
                return Err(format!("{} vertices, bound {}", out.report.n_out, out.report.bound));
            }
            if gx != kx {
                return Err("modulator graph changed".into());
            }
            Ok(())
        }
        Suite::Fpt => {
            let inst = small_instance(seed).map_err(err)?;
            let d = 2 + (seed >> 32) as usize % 3;
            let fast = fpt_decide_vc(&inst.graph, &inst.modulator, d, field, limits).map_err(err)?;
            let slow = decide_od(&inst.graph, d, field, limits).map_err(err)?;
            if let Some(rep) = &fast {
                verify_orthrep(&inst.graph, rep).map_err(|v| v.to_string())?;
            }
            if fast.is_some() != slow.is_some() {
                return Err(format!("cover decider {}, plain decider {}", fast.is_some(), slow.is_some()));
            }
            Ok(())
        }
        Suite::Reduction => {
            let g = gnp(3 + (seed % 4) as usize, 0.5, seed);
            let x = g.min_vertex_cover(g.n()).expect("budget covers every vertex");
            let red = col_to_od_vc(&g, &x, d).map_err(err)?;
            let colorable = decide_coloring(&g, d).is_some();
            let rep = decide_od(&red.graph, d, field, limits).map_err(err)?;
            if colorable != rep.is_some() {
                return Err(format!("colorable {colorable}, representable {}", rep.is_some()));
            }
            if let Some(rep) = rep {
                let colors = extract_coloring_from_orthrep(&red, &rep).map_err(err)?;
                check_coloring(&g, &colors, d).map_err(err)?;
            }
            Ok(())
        }
        Suite::Certificates => {
            let inst = random_list_instance(Family::UnionSplit, 8, d, field, seed).map_err(err)?;
            match split_no_certificate(&inst, limits) {
                Err(Error::YesInstance) => Ok(()),
                Err(e) => Err(e.to_string()),
                Ok(w) => {
                    let check = verify_certificate(&inst, &w, limits).map_err(err)?;
                    if check.valid() {
                        Ok(())
                    } else {
                        Err(format!("{check:?}"))
                    }
                }
            }
        }
    }
}

pub fn run_suite(suite: Suite, trials: u64, seed: u64, field: PrimeField, d: usize, limits: &SearchLimits) -> SuiteReport {
    let mut failures = Vec::new();
    for i in 0..trials {
        if let Err(why) = trial(suite, trial_seed(seed, i), field, d, limits) {
            failures.push((i, why));
        }
    }
    SuiteReport { trials, passed: trials - failures.len() as u64, failures }
}
