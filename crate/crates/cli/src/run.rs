use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use zf_core::exact::parse_rational;
use zf_core::{
    branch_curve_invariants, chisini_threshold, count_components, enumerate_spherical_systems,
    multiplet_bounds, multiplet_report, multiplet_reports, plurigenus_dimension,
    surface_invariants_from_types, BranchType, Completeness, Convention, CountOptions, EnumerationMode, Error,
    Exact, FiniteGroup,
};

use crate::args::{
    parse_range, Command, ComponentsArgs, CountFlags, EnumerateArgs, FamilyArgs, InvariantsArgs,
    Mode, ReportArgs,
};
use crate::report::{
    BatchReport, ComponentsReport, EnumerateReport, FamilyReport, InvariantsReport, SCHEMA,
};

/// An input problem; reported on one line with exit status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

/// A finished run: the document to print and whether some budget ran out.
pub struct Outcome {
    pub document: serde_json::Value,
    pub budget_exhausted: bool,
}

impl Outcome {
    fn new(doc: &impl Serialize, budget_exhausted: bool) -> Self {
        Outcome {
            document: serde_json::to_value(doc).expect("reports serialize"),
            budget_exhausted,
        }
    }
}

pub struct Budgets {
    pub work: Option<u64>,
    pub orbit: Option<usize>,
}

pub fn run(command: &Command, budgets: &Budgets) -> Result<Outcome, InputError> {
    match command {
        Command::Enumerate(a) => enumerate(a),
        Command::Components(a) => components(a, budgets),
        Command::Invariants(a) => invariants(a),
        Command::Family(a) => family(a, budgets),
        Command::Report(a) => report(a, budgets),
    }
}

pub fn load_group(spec: &str) -> Result<Arc<FiniteGroup>, InputError> {
    if let Some(g) = FiniteGroup::from_builtin(spec) {
        return Ok(Arc::new(g?));
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).map_err(|e| {
        InputError(format!(
            "group `{spec}` is neither a built-in name (Z2^k, S3, Q8, D<n>, Z<n>) nor a readable file: {e}"
        ))
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| spec.to_string());
    FiniteGroup::parse_table_file(name, &text)
        .map(Arc::new)
        .map_err(|e| InputError(format!("{spec}: {e}")))
}

fn parse_type(s: &str, flag: &str) -> Result<BranchType, InputError> {
    s.parse()
        .map_err(|e: Error| InputError(format!("--{flag} `{s}`: {e}")))
}

fn parse_int(s: &str, flag: &str) -> Result<BigInt, InputError> {
    s.trim()
        .parse()
        .map_err(|_| InputError(format!("--{flag} `{s}` is not an integer")))
}

fn parse_epsilon(s: &Option<String>) -> Result<Option<BigRational>, InputError> {
    s.as_deref()
        .map(|t| {
            parse_rational(t)
                .ok_or_else(|| InputError(format!("--epsilon `{t}` is not a rational number")))
        })
        .transpose()
}

fn count_options(flags: &CountFlags, budgets: &Budgets) -> CountOptions {
    let mut opts = CountOptions {
        count_ordered_pairs: flags.count_ordered_pairs,
        identify_inner: flags.identify_inner,
        ..CountOptions::default()
    };
    if let Some(b) = budgets.work {
        opts.budget = b;
    }
    if let Some(b) = budgets.orbit {
        opts.orbit_budget = b;
    }
    opts
}

fn enumerate(a: &EnumerateArgs) -> Result<Outcome, InputError> {
    let group = load_group(&a.group)?;
    let tau = parse_type(&a.tau, "tau")?;
    let mode = match a.mode {
        Mode::Ordered => EnumerationMode::Ordered,
        Mode::Multiset => EnumerationMode::Multiset,
    };
    let mut report = EnumerateReport {
        schema: SCHEMA,
        group: group.name().to_string(),
        tau: tau.to_string(),
        mode: format!("{:?}", a.mode).to_lowercase(),
        count: 0,
        multiset_classes: None,
        completeness: Completeness::Exact,
        systems: Vec::new(),
    };
    let iter = match enumerate_spherical_systems(&group, &tau, mode) {
        Ok(it) => it,
        Err(Error::BudgetExceeded { .. }) => {
            report.completeness = Completeness::BudgetLimited;
            return Ok(Outcome::new(&report, true));
        }
        Err(e) => return Err(e.into()),
    };
    let mut classes = BTreeSet::new();
    for t in iter {
        report.count += 1;
        if group.is_abelian() {
            let mut e = t.entries().to_vec();
            e.sort_unstable();
            classes.insert(e);
        }
        if report.systems.len() < a.limit {
            report.systems.push(t.labels());
        }
    }
    if group.is_abelian() {
        report.multiset_classes = Some(classes.len() as u64);
    }
    Ok(Outcome::new(&report, false))
}

fn components(a: &ComponentsArgs, budgets: &Budgets) -> Result<Outcome, InputError> {
    let group = load_group(&a.group)?;
    let tau1 = parse_type(&a.tau1, "tau1")?;
    let tau2 = parse_type(&a.tau2, "tau2")?;
    let opts = count_options(&a.flags, budgets);
    let base = |h, completeness, convention, note| ComponentsReport {
        schema: SCHEMA,
        group: group.name().to_string(),
        tau1: tau1.to_string(),
        tau2: tau2.to_string(),
        h,
        completeness,
        convention,
        note,
        keys: None,
    };
    match count_components(&group, &tau1, &tau2, &opts) {
        Ok(c) => {
            let limited = c.completeness == Completeness::BudgetLimited;
            let mut r = base(Some(c.h), c.completeness, c.convention, None);
            if limited {
                r.note = Some("orbit budget reached; h counts the classes found so far".into());
            }
            if a.keys {
                r.keys = Some(c.keys.into_iter().collect());
            }
            Ok(Outcome::new(&r, limited))
        }
        Err(Error::BudgetExceeded { what, budget }) => {
            let convention = Convention::new(
                &group,
                tau1 == tau2 && !opts.count_ordered_pairs,
                opts.identify_inner,
            );
            let r = base(
                None,
                Completeness::BudgetLimited,
                convention,
                Some(format!("budget {budget} exceeded: {what}")),
            );
            Ok(Outcome::new(&r, true))
        }
        Err(e) => Err(e.into()),
    }
}

fn invariants(a: &InvariantsArgs) -> Result<Outcome, InputError> {
    let (ksq, c2, surface) = match (&a.ksq, &a.c2, &a.group) {
        (Some(k), Some(c), None) => (parse_int(k, "ksq")?, parse_int(c, "c2")?, None),
        (None, None, Some(g)) => {
            let group = load_group(g)?;
            let t1 = parse_type(a.tau1.as_deref().unwrap_or_default(), "tau1")?;
            let t2 = parse_type(a.tau2.as_deref().unwrap_or_default(), "tau2")?;
            let s = surface_invariants_from_types(group.order() as u64, &t1, &t2)?;
            (s.ksq.clone(), s.e.clone(), Some(s))
        }
        _ => {
            return Err(InputError(
                "give either --ksq and --c2, or --group with --tau1 and --tau2".into(),
            ))
        }
    };
    let curve = branch_curve_invariants(&ksq, &c2, a.m)?;
    let threshold = chisini_threshold(&curve.d, &curve.g, &curve.c)?;
    let chisini_ok = BigRational::from_integer(curve.nu.clone()) > threshold;
    let chi = match (&a.chi, &surface) {
        (Some(c), _) => Some(parse_int(c, "chi")?),
        (None, Some(s)) => Some(s.chi.clone()),
        (None, None) => None,
    };
    let plurigenus = match &chi {
        Some(chi) => Some(plurigenus_dimension(chi, &ksq, a.m)?),
        None => None,
    };
    let bounds = match (parse_epsilon(&a.epsilon)?, &chi) {
        (Some(eps), Some(chi)) => Some(multiplet_bounds(&ksq, chi, &eps)?),
        (Some(_), None) => {
            return Err(InputError("--epsilon needs --chi (or a --group structure)".into()))
        }
        (None, _) => None,
    };
    let report = InvariantsReport {
        schema: SCHEMA,
        m: curve.m,
        ksq,
        c2,
        d: curve.d,
        n: curve.n,
        c: curve.c,
        g: curve.g,
        nu: curve.nu,
        euler_r: curve.euler_r,
        chisini_threshold: Exact(threshold),
        chisini_ok,
        surface,
        embedding_dim: plurigenus.as_ref().map(|p| p - 1u8),
        plurigenus,
        bounds,
    };
    Ok(Outcome::new(&report, false))
}

fn family(a: &FamilyArgs, budgets: &Budgets) -> Result<Outcome, InputError> {
    let eps = parse_epsilon(&a.epsilon)?;
    let r = multiplet_report(a.k, a.l, eps, &count_options(&a.flags, budgets))?;
    let limited = r.completeness == Completeness::BudgetLimited;
    Ok(Outcome::new(&FamilyReport { schema: SCHEMA, report: r }, limited))
}

fn report(a: &ReportArgs, budgets: &Budgets) -> Result<Outcome, InputError> {
    let ks = parse_range(&a.k).map_err(|e| InputError(format!("--k: {e}")))?;
    let ls = parse_range(&a.l).map_err(|e| InputError(format!("--l: {e}")))?;
    let rows: Vec<(u32, u32)> = ks
        .iter()
        .flat_map(|&k| ls.iter().filter(move |&&l| l > 2 * k).map(move |&l| (k, l)))
        .collect();
    if rows.is_empty() {
        return Err(InputError("no (k, l) with k >= 2 and l > 2k in the given ranges".into()));
    }
    let eps = parse_epsilon(&a.epsilon)?;
    let reports = multiplet_reports(&rows, eps, &count_options(&a.flags, budgets))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let limited = reports
        .iter()
        .any(|r| r.completeness == Completeness::BudgetLimited);
    Ok(Outcome::new(&BatchReport { schema: SCHEMA, rows: reports }, limited))
}
