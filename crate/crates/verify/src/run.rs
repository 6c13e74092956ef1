//! Dispatch of configured checks to the core suites.

use std::time::Instant;

use serde_json::{json, Map, Value};
use yqn_core::check::CheckOutcome;
use yqn_core::drinfeld::{self, functor_apply, DrinfeldCheck, DrinfeldConfig};
use yqn_core::dual_pairing::{self, pairing_table, Pairing, PairingCheck, PairingConfig};
use yqn_core::rmatrix::{self, build_r, RMatrixCheck};
use yqn_core::sergeev::{self, y_generators, SergeevCheck, SergeevConfig};
use yqn_core::yangian::{self, multi_eval_rep, YangianCheck};

use crate::config::{ConfigError, RunConfig, Suite};
use crate::json;
use crate::report::{Record, Report};

fn names<T: Copy>(all: &[T], name: fn(T) -> &'static str) -> Vec<&'static str> {
    all.iter().map(|&c| name(c)).collect()
}

/// Check names understood by a suite, in run order.
pub fn check_names(suite: Suite) -> Vec<&'static str> {
    match suite {
        Suite::Rmatrix => names(&RMatrixCheck::ALL, RMatrixCheck::name),
        Suite::Yangian => names(&YangianCheck::ALL, YangianCheck::name),
        Suite::Pairing => names(&PairingCheck::ALL, PairingCheck::name),
        Suite::Sergeev => names(&SergeevCheck::ALL, SergeevCheck::name),
        Suite::Drinfeld => names(&DrinfeldCheck::ALL, DrinfeldCheck::name),
    }
}

/// The selected groups of each suite. A requested name must belong to at
/// least one of the suites being run.
pub fn selection(suites: &[Suite], cfg: &RunConfig) -> Result<Vec<(Suite, Vec<&'static str>)>, ConfigError> {
    let Some(req) = &cfg.checks else {
        return Ok(suites.iter().map(|&s| (s, check_names(s))).collect());
    };
    for r in req {
        if !suites.iter().any(|&s| check_names(s).contains(&r.as_str())) {
            return Err(ConfigError::UnknownCheck(r.clone()));
        }
    }
    Ok(suites
        .iter()
        .map(|&s| (s, check_names(s).into_iter().filter(|n| req.iter().any(|r| r == n)).collect::<Vec<_>>()))
        .filter(|(_, v)| !v.is_empty())
        .collect())
}

/// Runs one named group of one suite.
pub fn run_group(suite: Suite, group: &str, cfg: &RunConfig) -> Vec<CheckOutcome> {
    let (big_n, controls) = (cfg.big_n, cfg.negative_controls);
    match suite {
        Suite::Rmatrix => rmatrix::run_checks(big_n, &[RMatrixCheck::parse(group).expect("validated")], controls),
        Suite::Yangian => yangian::run_checks(big_n, &cfg.effective_points(), cfg.smax, &[YangianCheck::parse(group).expect("validated")], controls),
        Suite::Pairing => {
            let pc = PairingConfig::new(big_n, cfg.max_degree);
            dual_pairing::run_checks(&pc, &[PairingCheck::parse(group).expect("validated")], controls)
        }
        Suite::Sergeev => {
            let sc = SergeevConfig::new(cfg.n, big_n, cfg.degree, cfg.seed);
            sergeev::run_checks(&sc, &[SergeevCheck::parse(group).expect("validated")], controls)
        }
        Suite::Drinfeld => {
            let dc = DrinfeldConfig::new(big_n, cfg.effective_modules(), cfg.smax, cfg.seed);
            drinfeld::run_checks(&dc, &[DrinfeldCheck::parse(group).expect("validated")])
        }
    }
}

fn run_suite(suite: Suite, groups: &[&'static str], cfg: &RunConfig) -> Vec<Record> {
    let mut out = Vec::new();
    for g in groups {
        let t = Instant::now();
        let res = run_group(suite, g, cfg);
        let ms = cfg.timings.then(|| t.elapsed().as_millis() as u64);
        out.extend(res.iter().map(|c| Record::new(suite.name(), g, c, ms)));
    }
    out
}

/// Runs the selection; several suites run on their own threads and the
/// records are merged in suite order.
pub fn run(command: &str, suites: &[Suite], cfg: &RunConfig) -> Result<Report, ConfigError> {
    let sel = selection(suites, cfg)?;
    let records = if sel.len() == 1 {
        run_suite(sel[0].0, &sel[0].1, cfg)
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = sel
                .iter()
                .map(|(s, g)| std::thread::Builder::new().stack_size(64 << 20).spawn_scoped(scope, move || run_suite(*s, g, cfg)).expect("spawn worker"))
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
        })
    };
    Ok(Report::new(command, cfg.echo(), records))
}

/// Exact objects behind each suite, for inspection and replay.
pub fn dump(suites: &[Suite], cfg: &RunConfig) -> Value {
    let mut m = Map::new();
    for &s in suites {
        let v = match s {
            Suite::Rmatrix => json!({ "r_matrix": json::operator(&build_r(cfg.big_n), json::ratfun) }),
            Suite::Yangian => json!({ "table": json::gen_image(&multi_eval_rep(cfg.big_n, &cfg.effective_points(), cfg.smax)) }),
            Suite::Pairing => json!({ "table": json::pairing_table(&pairing_table(&mut Pairing::new(cfg.big_n), cfg.max_degree)) }),
            Suite::Sergeev => {
                json!({ "y_generators": y_generators(cfg.n).iter().map(json::an_element).collect::<Vec<_>>() })
            }
            Suite::Drinfeld => {
                let mods: Vec<Value> = cfg
                    .effective_modules()
                    .iter()
                    .map(|spec| {
                        let u = spec.build();
                        let image = match functor_apply(cfg.big_n, &u, cfg.smax) {
                            Ok(v) => json::yqn_module(&v),
                            Err(e) => json!({ "error": e.to_string() }),
                        };
                        json!({ "label": spec.label(), "module": json::an_module(&u), "image": image })
                    })
                    .collect();
                json!({ "modules": mods })
            }
        };
        m.insert(s.name().into(), v);
    }
    Value::Object(m)
}
