use algebroid_core::algebroid::Algebroid;
use algebroid_core::examples;
use algebroid_core::groupoid::{FiniteGroupoid, SmoothGroupoid};
use algebroid_core::jet::SmoothMap;
use algebroid_core::pregroupoid::{FinitePregroupoid, SmoothPregroupoid};
use algebroid_core::tangent::{max_abs_diff, LawCheck, FINITE_TOLERANCE, JET_TOLERANCE};
use algebroid_core::Error;

use crate::config::{Backend, ExampleSource, Suite, SuiteConfig};
use crate::format::{load_tables, FiniteTables, LoadError};
use crate::report::RunReport;

/// Errors that stop a run before a report exists. Law failures are not
/// errors; they are recorded in the report.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("could not load example: {0}")]
    Load(#[from] LoadError),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Config(e.to_string())
    }
}

pub type RunResult<T> = std::result::Result<T, RunError>;

/// A loaded example.
enum Example {
    FiniteGroupoid(Box<FiniteGroupoid>),
    FinitePregroupoid(Box<FinitePregroupoid>),
    SmoothGroupoid(SmoothGroupoid),
    SmoothPregroupoid(SmoothPregroupoid),
}

impl Example {
    fn is_groupoid(&self) -> bool {
        matches!(self, Example::FiniteGroupoid(_) | Example::SmoothGroupoid(_))
    }

    fn has_unit(&self) -> bool {
        match self {
            Example::FinitePregroupoid(p) => p.unit().is_some(),
            Example::SmoothPregroupoid(p) => p.unit().is_some(),
            _ => true,
        }
    }
}

fn load(config: &SuiteConfig, tolerance: f64) -> RunResult<Example> {
    match (&config.example, config.backend) {
        (ExampleSource::File(path), Backend::Finite) => Ok(match load_tables(path)? {
            FiniteTables::Groupoid(g) => Example::FiniteGroupoid(g),
            FiniteTables::Pregroupoid(p) => Example::FinitePregroupoid(p),
        }),
        (ExampleSource::File(_), Backend::Jet) => Err(RunError::Config("table files are finite-only".into())),
        (ExampleSource::Builtin(key), Backend::Finite) => match examples::finite_groupoid(key) {
            Ok(g) => Ok(Example::FiniteGroupoid(Box::new(g))),
            Err(_) => Ok(Example::FinitePregroupoid(Box::new(examples::finite_pregroupoid(key)?))),
        },
        (ExampleSource::Builtin(key), Backend::Jet) => match examples::smooth_groupoid(key) {
            Ok(g) => Ok(Example::SmoothGroupoid(g.with_tolerance(tolerance))),
            Err(_) => Ok(Example::SmoothPregroupoid(
                examples::smooth_pregroupoid(key)?.with_tolerance(tolerance),
            )),
        },
    }
}

/// The suites to run: the requested ones, or every applicable one.
fn select_suites(config: &SuiteConfig, example: &Example) -> RunResult<Vec<Suite>> {
    let applicable = |s: Suite| {
        (example.is_groupoid() || !s.needs_groupoid())
            && (s != Suite::Algebroid || config.backend == Backend::Jet)
            && (s != Suite::Splitting || example.has_unit())
    };
    if config.suites.is_empty() {
        return Ok(Suite::ALL.into_iter().filter(|&s| applicable(s)).collect());
    }
    let mut suites = Vec::new();
    for &s in &config.suites {
        if s.needs_groupoid() && !example.is_groupoid() {
            return Err(RunError::Config(format!(
                "the {s} suite needs a groupoid, and {} is a pregroupoid",
                config.example
            )));
        }
        if s == Suite::Splitting && !example.has_unit() {
            return Err(RunError::Config(format!(
                "the splitting suite needs e : B -> X, which {} lacks",
                config.example
            )));
        }
        if !suites.contains(&s) {
            suites.push(s);
        }
    }
    Ok(suites)
}

/// Runs the configured suites. Configuration and load problems are errors;
/// law failures are recorded in the report.
pub fn run(config: &SuiteConfig) -> RunResult<RunReport> {
    config.validate().map_err(RunError::Config)?;
    let tolerance = match config.backend {
        Backend::Finite => FINITE_TOLERANCE,
        Backend::Jet => config.tolerance.unwrap_or(JET_TOLERANCE),
    };
    let example = load(config, tolerance)?;
    let suites = select_suites(config, &example)?;
    let mut report = RunReport::new(config.clone(), tolerance);
    for suite in suites {
        let outcome = match &example {
            Example::FiniteGroupoid(g) => finite_groupoid_suite(&mut report, suite, g),
            Example::FinitePregroupoid(p) => finite_pregroupoid_suite(&mut report, suite, p),
            Example::SmoothGroupoid(g) => smooth_groupoid_suite(&mut report, suite, g, config),
            Example::SmoothPregroupoid(p) => smooth_pregroupoid_suite(&mut report, suite, p, config),
        };
        match outcome {
            Ok(()) => {}
            Err(e) if e.is_config() => return Err(RunError::Config(e.to_string())),
            Err(e) => {
                // a law computation that could not be carried out counts
                // as a failure of the suite
                let mut check = LawCheck::new("suite completed", tolerance);
                check.record_failure(|| e.to_string());
                report.push_law(suite, &check.finish());
            }
        }
    }
    Ok(report)
}

fn finite_groupoid_suite(report: &mut RunReport, suite: Suite, g: &FiniteGroupoid) -> algebroid_core::Result<()> {
    match suite {
        Suite::GroupoidLaws => {
            report.push_laws(suite, &g.check_groupoid()?);
            report.push_law(suite, &g.check_mu_s_base_law()?);
        }
        Suite::Bijection => {
            let count = g.count_bijection()?;
            report.push_value(suite, "sections of pi^s_M", count.sections);
            report.push_value(suite, "left-invariant sections of p^s", count.invariant_fields);
            let tol = FINITE_TOLERANCE;
            let mut equal = LawCheck::new("counts agree", tol);
            equal.record_eq(&count.sections, &count.invariant_fields, || {
                format!("{} sections, {} fields", count.sections, count.invariant_fields)
            });
            report.push_law(suite, &equal.finish());
            for (law, holds) in [
                ("(v^)v = v for every section", count.sections_round_trip),
                ("(Xv)^ = X for every invariant field", count.fields_round_trip),
                ("extensions are invariant and distinct", count.extension_injective),
            ] {
                let mut check = LawCheck::new(law, tol);
                check.record_eq(&holds, &true, || "see the bijection counts".into());
                report.push_law(suite, &check.finish());
            }
        }
        Suite::Algebroid => return Err(Error::Config("the algebroid suite needs the jet backend".into())),
        Suite::Pregroupoid | Suite::Splitting => {
            let p = FinitePregroupoid::from_groupoid(g)?;
            return finite_pregroupoid_suite(report, suite, &p);
        }
    }
    Ok(())
}

fn finite_pregroupoid_suite(report: &mut RunReport, suite: Suite, p: &FinitePregroupoid) -> algebroid_core::Result<()> {
    match suite {
        Suite::Pregroupoid => {
            report.push_laws(suite, &p.check_pregroupoid()?);
            report.push_law(suite, &p.check_xi_check_involution()?);
            report.push_law(suite, &p.check_xi_involution()?);
        }
        Suite::Splitting => {
            let (lhs, rhs) = p.split_cardinalities()?;
            report.push_value(suite, "|T^alpha X|", lhs);
            report.push_value(suite, "|X x_beta T^alpha_B X|", rhs);
            report.push_laws(suite, &p.check_splitting()?);
            report.push_laws(suite, &p.check_squares(4)?);
        }
        _ => return Err(Error::Config(format!("the {suite} suite needs a groupoid"))),
    }
    Ok(())
}

fn smooth_groupoid_suite(
    report: &mut RunReport,
    suite: Suite,
    g: &SmoothGroupoid,
    config: &SuiteConfig,
) -> algebroid_core::Result<()> {
    let plan = config.plan();
    match suite {
        Suite::GroupoidLaws => {
            report.push_laws(suite, &g.check_groupoid(&plan)?);
            report.push_law(suite, &g.check_mu_s_base_law(&plan)?);
        }
        Suite::Bijection => {
            let a = Algebroid::new(g.clone(), plan);
            let mut sections = a.standard_basis()?;
            // one section that varies over the base, when there is a base
            if g.base_dim() > 0 {
                let (m, k) = (g.base_dim(), g.fiber_dim());
                let fibre = SmoothMap::total("(1 + m_1) e1", m, k, move |x| {
                    let mut out = vec![x[0] * 0.0; k];
                    out[0] = x[0] + 1.0;
                    out
                });
                sections.push(g.section_from_fibre(&fibre)?);
            }
            for v in &sections {
                let field = g.extend(v, &plan)?;
                let mut invariant = g.is_left_invariant(&field, &plan)?;
                invariant.law = format!("{}^ is left invariant", v.0.name());
                report.push_law(suite, &invariant);
                let back = g.restrict(&field, &plan)?;
                let mut round = LawCheck::new(format!("({}^)v = {0}", v.0.name()), g.tolerance());
                for m in g.sample_base(&plan) {
                    round.record(max_abs_diff(&back.0.eval(&m)?, &v.0.eval(&m)?), || format!("{m:?}"));
                }
                report.push_law(suite, &round.finish());
            }
        }
        Suite::Algebroid => algebroid_suite(report, g, config)?,
        Suite::Pregroupoid | Suite::Splitting => {
            let p = SmoothPregroupoid::from_groupoid(g)?;
            return smooth_pregroupoid_suite(report, suite, &p, config);
        }
    }
    Ok(())
}

fn algebroid_suite(report: &mut RunReport, g: &SmoothGroupoid, config: &SuiteConfig) -> algebroid_core::Result<()> {
    let suite = Suite::Algebroid;
    let a = Algebroid::new(g.clone(), config.plan());
    let basis = a.standard_basis()?;
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let x = g.extend(&basis[i], a.plan())?;
            let y = g.extend(&basis[j], a.plan())?;
            let pair = format!("[{},{}]", basis[i].0.name(), basis[j].0.name());
            for mut r in a.bracket_diagnostics(&x, &y)? {
                r.law = format!("{pair} {}", r.law);
                report.push_law(suite, &r);
            }
        }
    }
    let c = a.structure_constants(&basis)?;
    let names = &c.names;
    for k in 0..c.size() {
        for i in 0..c.size() {
            for j in 0..c.size() {
                report.push_value(
                    suite,
                    format!(
                        "c^{}_{}{} ([{},{}] along {})",
                        k + 1,
                        i + 1,
                        j + 1,
                        names[i],
                        names[j],
                        names[k]
                    ),
                    format!("{:+.12e}", c.get(k, i, j)),
                );
            }
        }
    }
    report.push_value(suite, "structure constant fit residual", format!("{:.3e}", c.residual));
    report.push_law(suite, &a.check_antisymmetry(&basis)?);
    if g.base_dim() == 0 {
        report.push_law(suite, &a.check_jacobi(&basis)?);
    } else {
        let square = SmoothMap::total("m_1^2", g.base_dim(), 1, |x| vec![x[0] * x[0]]);
        report.push_law(suite, &a.check_leibniz(&basis[0], &basis[basis.len() - 1], &square)?);
    }
    Ok(())
}

fn smooth_pregroupoid_suite(
    report: &mut RunReport,
    suite: Suite,
    p: &SmoothPregroupoid,
    config: &SuiteConfig,
) -> algebroid_core::Result<()> {
    let plan = config.plan();
    match suite {
        Suite::Pregroupoid => {
            report.push_laws(suite, &p.check_pregroupoid(&plan)?);
            report.push_law(suite, &p.check_xi_check_involution(&plan)?);
            report.push_law(suite, &p.check_xi_involution(&plan)?);
        }
        Suite::Splitting => {
            report.push_laws(suite, &p.check_splitting(&plan)?);
            report.push_laws(suite, &p.check_squares(&plan)?);
        }
        _ => return Err(Error::Config(format!("the {suite} suite needs a groupoid"))),
    }
    Ok(())
}
