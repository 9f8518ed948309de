use std::path::Path;
use std::sync::Arc;

use ydbraid_core::braided::{self, build_yd_system, build_ydalg_system, check_braided_morphism};
use ydbraid_core::homology::{homology as compute_homology, two_sided_complex, HomologyReport, Which};
use ydbraid_core::hopf::{self, check_bialgebra, group_algebra, monoid_algebra, GroupTable, Level};
use ydbraid_core::linalg::Field;
use ydbraid_core::report::AxiomReport;
use ydbraid_core::rmatrix::{antipode_inverse_r, check_r, yd_from_r, RLevel};
use ydbraid_core::tensor::LinMap;
use ydbraid_core::yd::{self, check_yd, check_yd_algebra, formal_unit_extend, regular_yd, trivial_yd, YdLevel};

use crate::io::*;
use crate::{CheckKind, DifferentialArg, HomologyArgs, RLevelArg, Variant};

fn verdict(name: &str, rep: &AxiomReport) -> bool {
    print!("{rep}");
    let ok = rep.passed();
    println!("{name}: {}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn builtin_group(spec: &str, table: Option<&Path>) -> CliResult<GroupTable> {
    let bad = || CliError::Input(format!("--group: expected Z<n>, S3, D4 or table, got '{spec}'"));
    match spec {
        "S3" => Ok(GroupTable::symmetric3()),
        "D4" => Ok(GroupTable::dihedral4()),
        "table" => load_group_table(table.ok_or_else(bad)?),
        _ => {
            let n: usize = spec.strip_prefix('Z').and_then(|n| n.parse().ok()).ok_or_else(bad)?;
            Ok(GroupTable::cyclic(n)?)
        }
    }
}

pub fn gen_group_algebra(
    group: &str,
    table: Option<&Path>,
    monoid: bool,
    field: Field,
    out: Option<&Path>,
) -> CliResult<bool> {
    let g = builtin_group(group, table)?;
    let b = if monoid { monoid_algebra(field, &g)? } else { group_algebra(field, &g)? };
    write_json(out, &bialgebra_to_json(&b))?;
    Ok(true)
}

pub fn gen_regular_yd(hopf: &Path, out: Option<&Path>) -> CliResult<bool> {
    let b = Arc::new(load_bialgebra(hopf)?);
    write_json(out, &yd_to_json(&regular_yd(b)?))?;
    Ok(true)
}

pub fn gen_trivial_yd(hopf: &Path, dim: usize, out: Option<&Path>) -> CliResult<bool> {
    let b = Arc::new(load_bialgebra(hopf)?);
    write_json(out, &yd_to_json(&trivial_yd(b, dim)))?;
    Ok(true)
}

pub fn gen_formal_unit(module: &Path, out: Option<&Path>) -> CliResult<bool> {
    let m = load_module(module, None)?.yd(module)?;
    write_json(out, &yd_algebra_to_json(&formal_unit_extend(&m)))?;
    Ok(true)
}

pub fn check(kind: CheckKind, level: RLevelArg, files: &[std::path::PathBuf]) -> CliResult<bool> {
    let mut all = true;
    for f in files {
        let name = f.display().to_string();
        let rep = match kind {
            CheckKind::Bialgebra => check_bialgebra(&load_bialgebra(f)?, Level::Bialgebra),
            CheckKind::Hopf => check_bialgebra(&load_bialgebra(f)?, Level::Hopf),
            CheckKind::Yd => check_yd(&load_module(f, None)?.yd(f)?, YdLevel::Yd),
            CheckKind::YdAlgebra => check_yd_algebra(&load_module(f, None)?.yd_algebra(f)?),
            CheckKind::Rmatrix => {
                let level = match level {
                    RLevelArg::Weak => RLevel::Weak,
                    RLevelArg::Strong => RLevel::Strong,
                    RLevelArg::Quantum => RLevel::QuantumYbe,
                };
                check_r(&load_rmatrix(f, None)?, level)
            }
        };
        all &= verdict(&name, &rep);
    }
    Ok(all)
}

pub fn dual_bialgebra(file: &Path, out: Option<&Path>) -> CliResult<bool> {
    let b = load_bialgebra(file)?;
    write_json(out, &bialgebra_to_json(&hopf::dual_bialgebra(&b)))?;
    Ok(true)
}

pub fn dual_yd(file: &Path, out: Option<&Path>) -> CliResult<bool> {
    let m = load_module(file, None)?.yd(file)?;
    write_json(out, &yd_to_json(&yd::dual_yd(&m)))?;
    Ok(true)
}

pub fn r_coaction(module: &Path, r: &Path, out: Option<&Path>) -> CliResult<bool> {
    let rm = load_rmatrix(r, None)?;
    let m = load_module(module, Some(&rm.base))?;
    let yd = yd_from_r(&m.module, &rm)?;
    write_json(out, &yd_to_json(&yd))?;
    Ok(true)
}

pub fn r_inverse(r: &Path, out: Option<&Path>) -> CliResult<bool> {
    let rm = antipode_inverse_r(&load_rmatrix(r, None)?)?;
    write_json(out, &rmatrix_to_json(&rm))?;
    Ok(true)
}

pub fn build_system(
    hopf: &Path,
    modules: &[std::path::PathBuf],
    variant: Variant,
    out: Option<&Path>,
) -> CliResult<bool> {
    let b = Arc::new(load_bialgebra(hopf)?);
    let files = modules.iter().map(|p| Ok((p, load_module(p, Some(&b))?))).collect::<CliResult<Vec<_>>>()?;
    let s = match variant {
        Variant::Yd => build_yd_system(&b, &files.iter().map(|(p, m)| m.yd(p)).collect::<CliResult<Vec<_>>>()?)?,
        Variant::Ydalg => {
            build_ydalg_system(&b, &files.iter().map(|(p, m)| m.yd_algebra(p)).collect::<CliResult<Vec<_>>>()?)?
        }
    };
    write_json(out, &system_to_json(&s))?;
    Ok(true)
}

pub fn verify_cybe(file: &Path) -> CliResult<bool> {
    let s = load_system(file)?;
    Ok(verdict(&file.display().to_string(), &braided::verify_cybe(&s)))
}

pub fn verify_morphism(from: &Path, to: &Path, maps: &Path) -> CliResult<bool> {
    let (a, b) = (load_system(from)?, load_system(to)?);
    let f = load_maps(maps, &a, &b)?;
    Ok(verdict(&maps.display().to_string(), &check_braided_morphism(&f, &a, &b)?))
}

pub fn glue(system: &Path, lo: usize, hi: usize, out: Option<&Path>) -> CliResult<bool> {
    let s = load_system(system)?;
    if lo == 0 || hi == 0 {
        return Err(CliError::Input("--lo and --hi are 1-based".into()));
    }
    let g = braided::glue(&s, lo - 1, hi - 1)?;
    write_json(out, &system_to_json(&g))?;
    Ok(true)
}

pub fn precision(hopf: &Path, dim: usize, trials: usize, seed: u64) -> CliResult<bool> {
    let b = Arc::new(load_bialgebra(hopf)?);
    let sum = braided::run_precision_trials(&b, dim, trials, seed)?;
    println!("trials: {}  dim: {dim}  seed: {seed}", sum.trials);
    for (k, name) in braided::ROW_NAMES.iter().enumerate() {
        println!("  {name}: axiom held {} / failed {}", sum.axiom_true[k], sum.axiom_false[k]);
    }
    for (trial, row) in &sum.inconsistencies {
        println!("  MISMATCH trial {trial}: {row}");
    }
    println!("precision: {}", if sum.consistent() { "PASS" } else { "FAIL" });
    Ok(sum.consistent())
}

pub fn homology(a: &HomologyArgs) -> CliResult<bool> {
    let b = Arc::new(load_bialgebra(&a.hopf)?);
    let m = load_module(&a.module, Some(&b))?.yd(&a.module)?;
    let n = load_module(&a.coeff, Some(&b))?.yd(&a.coeff)?;
    let which = match a.differential {
        DifferentialArg::D => Which::D,
        DifferentialArg::DPrime => Which::DPrime,
        DifferentialArg::Total => Which::Total,
    };
    let cx = two_sided_complex(&b, &m, &n, a.line, a.max_degree)?;
    let rep = compute_homology(&cx, which, a.cohomology)?;
    write_json(a.output.as_deref(), &report_to_json(&rep, a.line))?;
    Ok(summarize(&rep))
}

fn summarize(rep: &HomologyReport) -> bool {
    let kind = if rep.cohomology { "cohomology" } else { "homology" };
    for r in &rep.rows {
        match r.homology_dim {
            Some(h) => eprintln!("  degree {}: chain {} {kind} {h}", r.degree, r.chain_dim),
            None => eprintln!("  degree {}: chain {} (top kernel {})", r.degree, r.chain_dim, rep.top_kernel),
        }
    }
    eprintln!("identities d∘d, d′∘d′, dd′+d′d: {:?}  euler: {}", rep.identities, rep.euler_holds);
    rep.identities.iter().all(|&x| x) && rep.euler_holds
}

pub fn report(file: &Path) -> CliResult<bool> {
    let (rep, line) = load_report(file)?;
    eprintln!("line {line}, truncation {}, differential {}", rep.truncation, rep.which);
    Ok(summarize(&rep))
}

pub fn gen_identity_maps(system: &Path, out: Option<&Path>) -> CliResult<bool> {
    let s = load_system(system)?;
    let maps: Vec<LinMap> =
        s.components().iter().map(|c| LinMap::identity(s.field(), std::slice::from_ref(c))).collect();
    write_json(out, &maps_to_json(&maps))?;
    Ok(true)
}
