//! `omlocal`: OM factorizations, values and invariants of polynomials over
//! the p-adic integers.

mod output;
mod parse;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use omlocal::exactnum::{ceil_rat, is_prime, rat_int, IntPoly, ValOrInf};
use omlocal::ffield::{FFPoly, TowerField};
use omlocal::invariants::{
    build_type_with_invariants, index_of_coincidence, index_of_f, okutsu_basis, okutsu_invariants,
    resultant_valuation, LevelSpec,
};
use omlocal::montes::{montes_with_seed, OMForest, OMLeaf, DEFAULT_SEED};
use omlocal::sfl::{self, sfl_state, v_value, LiftState};
use omlocal::OmError;
use serde::Serialize;
use thiserror::Error;

use output::*;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Engine(#[from] OmError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Malformed(_) => 2,
            CliError::Engine(OmError::NotSquareFree) => 3,
            CliError::Engine(
                OmError::NotMonic
                | OmError::NotPrime(_)
                | OmError::ZeroPolynomial
                | OmError::InvalidType(_)
                | OmError::ForeignLeaf(_)
                | OmError::SameLeaf
                | OmError::Reducible
                | OmError::TrivialGenerator
                | OmError::NoIrreducible { .. }
                | OmError::Precondition(_),
            ) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "omlocal", version, about = "OM representations of polynomials over the p-adic integers")]
struct Cli {
    /// Print `value` and `index` results as JSON objects.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized factorization over finite fields.
    #[arg(long, global = true, env = "OMLOCAL_SEED")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// The prime p.
    #[arg(short = 'p')]
    p: u64,
    /// Monic polynomial: an expression in x or a JSON list of decimal strings, constant term first.
    #[arg(short = 'f', allow_hyphen_values = true)]
    f: String,
}

#[derive(Subcommand)]
enum Command {
    /// OM representation of f as a forest of leaves.
    Factor {
        #[command(flatten)]
        input: Input,
        /// Lift every leaf until its approximation has precision at least N.
        #[arg(long, value_name = "N", conflicts_with = "quality")]
        precision: Option<i64>,
        /// Lift every leaf until its slope is at least H.
        #[arg(long, value_name = "H")]
        quality: Option<i64>,
        /// Worker threads for lifting.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// v(g(θ)) for a root θ of the factor attached to a leaf.
    Value {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        leaf: usize,
        #[arg(short = 'g', allow_hyphen_values = true)]
        g: String,
    },
    /// Okutsu bases of the factors.
    Basis {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        leaf: Option<usize>,
    },
    /// Okutsu invariants of the factors.
    Invariants {
        #[command(flatten)]
        input: Input,
    },
    /// A representative of a type with prescribed invariants.
    Construct {
        #[arg(short = 'p')]
        p: u64,
        /// Monic irreducible residual polynomial over F_p, in x or y.
        #[arg(long, default_value = "y")]
        psi0: String,
        /// Levels as `e,f,h;e,f,h;...`.
        #[arg(long)]
        levels: String,
    },
    /// The p-adic valuation of the index of f.
    Index {
        #[command(flatten)]
        input: Input,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match &err {
                CliError::Engine(OmError::NotSquareFree) => eprintln!("error: not square-free"),
                _ => eprintln!("error: {}", err),
            }
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    match &cli.command {
        Command::Factor { input, precision, quality, jobs } => {
            let (p, f) = read_input(input)?;
            let forest = montes_with_seed(&f, p, seed)?;
            let target = match (precision, quality) {
                (Some(n), _) => LiftTarget::Precision(*n),
                (None, Some(h)) => LiftTarget::Slope(*h),
                (None, None) => LiftTarget::None,
            };
            let lifted = lift_all(&forest, target, (*jobs).max(1))?;
            emit_json(&forest_json(&forest, &lifted)?)
        }
        Command::Value { input, leaf, g } => {
            let (p, f) = read_input(input)?;
            let g = parse::parse_poly(g)?;
            let forest = montes_with_seed(&f, p, seed)?;
            let value = match v_value(&f, forest.leaf(*leaf)?, &g)? {
                ValOrInf::Infinite => "inf".to_string(),
                ValOrInf::Finite(v) => rational_value(&v),
            };
            if cli.json {
                emit_json(&ValueJson { value })
            } else {
                emit_line(&value)
            }
        }
        Command::Basis { input, leaf } => {
            let (p, f) = read_input(input)?;
            let forest = montes_with_seed(&f, p, seed)?;
            let chosen: Vec<usize> = match leaf {
                Some(k) => {
                    forest.leaf(*k)?;
                    vec![*k]
                }
                None => (0..forest.leaves.len()).collect(),
            };
            let mut out = Vec::new();
            for k in chosen {
                let basis = okutsu_basis(&forest.leaves[k])?
                    .into_iter()
                    .map(|(g, d)| BasisElementJson { g: coeff_list(&g), d: d.to_string() })
                    .collect();
                out.push(LeafBasisJson { leaf: k.to_string(), basis });
            }
            emit_json(&out)
        }
        Command::Invariants { input } => {
            let (p, f) = read_input(input)?;
            let forest = montes_with_seed(&f, p, seed)?;
            let out = forest
                .leaves
                .iter()
                .enumerate()
                .map(|(k, leaf)| {
                    Ok(LeafInvariantsJson {
                        leaf: k.to_string(),
                        tree: leaf.tree.to_string(),
                        invariants: invariants(&okutsu_invariants(leaf)?),
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            emit_json(&out)
        }
        Command::Construct { p, psi0, levels } => {
            check_prime(*p)?;
            let tower = TowerField::prime(*p);
            let psi0 = parse_residual(psi0, &tower)?;
            let specs = parse_levels(levels)?;
            let (t, phi) = build_type_with_invariants(*p, &psi0, &specs)?;
            let verified = match montes_with_seed(&phi, *p, seed) {
                Ok(forest) => {
                    forest.leaves.len() == 1
                        && forest.leaves[0].efh() == t.efh()
                        && forest.leaves[0].base.psi0() == t.psi0()
                }
                Err(_) => false,
            };
            let levels = t
                .levels()
                .iter()
                .map(|l| PrescribedLevelJson {
                    e: l.e.to_string(),
                    f: l.f.to_string(),
                    h: l.h.to_string(),
                    psi: ff_coeffs(t.tower(), &l.psi),
                })
                .collect();
            emit_json(&ConstructJson {
                p: p.to_string(),
                psi0: prime_coeffs(t.psi0()),
                levels,
                representative: coeff_list(&phi),
                verified,
            })
        }
        Command::Index { input } => {
            let (p, f) = read_input(input)?;
            let forest = montes_with_seed(&f, p, seed)?;
            let index = index_of_f(&forest)?.to_string();
            if cli.json {
                emit_json(&IndexJson { index, accumulated_index: forest.accumulated_index.to_string() })
            } else {
                emit_line(&index)
            }
        }
    }
}

fn check_prime(p: u64) -> Result<(), CliError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(CliError::Malformed(format!("{} is not prime", p)))
    }
}

fn read_input(input: &Input) -> Result<(u64, IntPoly), CliError> {
    check_prime(input.p)?;
    let f = parse::parse_poly(&input.f)?;
    if f.deg() < 1 || !f.is_monic() {
        return Err(CliError::Malformed("f must be monic of positive degree".into()));
    }
    Ok((input.p, f))
}

fn parse_residual(text: &str, tower: &TowerField) -> Result<FFPoly, CliError> {
    let g = if text.trim().starts_with('[') {
        parse::parse_poly(text)?
    } else {
        parse::parse_expr(&text.replace('y', "x"), 'x')?
    };
    let reduced = tower.reduce_int_poly(&g);
    if reduced.is_zero() || reduced.deg() < 1 || !reduced.is_monic(tower) {
        return Err(CliError::Malformed("psi0 must be monic of positive degree mod p".into()));
    }
    Ok(reduced)
}

fn parse_levels(text: &str) -> Result<Vec<LevelSpec>, CliError> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let parts: Vec<&str> = item.split(',').map(str::trim).collect();
            let bad = || CliError::Malformed(format!("level {:?} is not e,f,h", item));
            if parts.len() != 3 {
                return Err(bad());
            }
            let e: i64 = parts[0].parse().map_err(|_| bad())?;
            let f: usize = parts[1].parse().map_err(|_| bad())?;
            let h: i64 = parts[2].parse().map_err(|_| bad())?;
            Ok(LevelSpec::new(e, f, h))
        })
        .collect()
}

#[derive(Clone, Copy)]
enum LiftTarget {
    None,
    Precision(i64),
    Slope(i64),
}

/// Slope the leaf must reach, or `None` when no lifting is needed.
fn target_slope(leaf: &OMLeaf, target: LiftTarget) -> Result<Option<i64>, CliError> {
    let Some(current) = leaf.leaf.slope else { return Ok(None) };
    let wanted = match target {
        LiftTarget::None => return Ok(None),
        LiftTarget::Slope(h) => h,
        LiftTarget::Precision(n) => {
            let inv = okutsu_invariants(leaf)?;
            let bound = rat_int(inv.e) * (rat_int(n) + inv.cap - inv.delta0);
            ceil_rat(&bound).to_i64().ok_or_else(|| CliError::Malformed("precision too large".into()))?
        }
    };
    Ok((wanted > current).then_some(wanted))
}

fn lift_one(f: &IntPoly, leaf: &OMLeaf, target: LiftTarget) -> Result<Option<LiftState>, CliError> {
    match target_slope(leaf, target)? {
        Some(h) => Ok(Some(sfl_state(f, leaf, h, true)?)),
        None => Ok(None),
    }
}

fn lift_all(forest: &OMForest, target: LiftTarget, jobs: usize) -> Result<Vec<Option<LiftState>>, CliError> {
    let n = forest.leaves.len();
    if matches!(target, LiftTarget::None) {
        return Ok(vec![None; n]);
    }
    let mut results: Vec<Option<Result<Option<LiftState>, CliError>>> = (0..n).map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs.min(n.max(1)))
            .map(|w| {
                scope.spawn(move || {
                    (w..n)
                        .step_by(jobs)
                        .map(|k| (k, lift_one(&forest.f, &forest.leaves[k], target)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for handle in handles {
            for (k, res) in handle.join().expect("lifting worker panicked") {
                results[k] = Some(res);
            }
        }
    });
    results.into_iter().map(|r| r.expect("every leaf is lifted")).collect()
}

fn forest_json(forest: &OMForest, lifted: &[Option<LiftState>]) -> Result<ForestJson, CliError> {
    let tree_count = forest.roots.len();
    let mut trees = Vec::with_capacity(tree_count);
    for tree in 0..tree_count {
        let root_psi0 = prime_coeffs(&forest.roots[tree]);
        let mut leaves = Vec::new();
        for (k, leaf) in forest.tree_leaves(tree) {
            leaves.push(leaf_json(leaf, lifted[k].as_ref())?);
        }
        trees.push(TreeJson { root_psi0, leaves });
    }
    let n = forest.leaves.len();
    let mut pairwise = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            pairwise.push(PairJson {
                a: a.to_string(),
                b: b.to_string(),
                ioc: index_of_coincidence(forest, a, b)?.to_string(),
                res_val: resultant_valuation(forest, a, b)?.numer().to_string(),
            });
        }
    }
    Ok(ForestJson {
        schema_version: SCHEMA_VERSION,
        p: forest.p.to_string(),
        f: coeff_list(&forest.f),
        trees,
        index: index_of_f(forest)?.to_string(),
        pairwise,
    })
}

fn leaf_json(leaf: &OMLeaf, lifted: Option<&LiftState>) -> Result<LeafJson, CliError> {
    let base = &leaf.base;
    let tower = base.tower();
    let levels = base
        .levels()
        .iter()
        .map(|l| LevelJson {
            phi: coeff_list(&l.phi),
            h: l.h.to_string(),
            e: l.e.to_string(),
            psi: ff_coeffs(tower, &l.psi),
            m: l.m.to_string(),
            big_v: l.big_v.to_string(),
        })
        .collect();
    let infinite = || "inf".to_string();
    let (phi, slope, psi, quality) = match lifted {
        Some(st) => (&st.phi, st.h_phi, st.psi.as_ref(), st.quality()),
        None => (&leaf.leaf.phi, leaf.leaf.slope, leaf.leaf.psi.as_ref(), sfl::quality(leaf)),
    };
    let precision_bound = quality.as_ref().map(|q| q - sfl::capacity(base));
    Ok(LeafJson {
        depth: leaf.depth().to_string(),
        levels,
        leaf: LeafLevelJson {
            phi: coeff_list(phi),
            lambda: slope.map_or_else(infinite, |h| format!("{}/1", h)),
            psi: psi.map(|psi| ff_coeffs(tower, psi)),
            h_cs: leaf.h_cs.to_string(),
        },
        invariants: invariants(&okutsu_invariants(leaf)?),
        quality: quality.as_ref().map_or_else(infinite, fraction),
        precision_bound: precision_bound.as_ref().map_or_else(infinite, fraction),
    })
}

fn emit_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.into()))?;
    emit_line(&text)
}

fn emit_line(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", text)?;
    Ok(())
}
