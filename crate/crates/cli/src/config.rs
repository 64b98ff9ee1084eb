use std::fmt;
use std::path::PathBuf;

use algebroid_core::SamplePlan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Backend {
    /// Finite sets with the diagonal tangent functor.
    Finite,
    /// Second-order jets on R^n.
    Jet,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Finite => "finite",
            Backend::Jet => "jet",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    /// Groupoid axioms, bundle squares and the mu^s base law.
    GroupoidLaws,
    /// Sections of pi^s_M against left-invariant fields.
    Bijection,
    /// Bracket closure, structure constants and Lie-algebra laws (jet only).
    Algebroid,
    /// Pregroupoid axioms and the two involutions.
    Pregroupoid,
    /// split/unsplit and the three squares (needs e).
    Splitting,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::GroupoidLaws,
        Suite::Bijection,
        Suite::Algebroid,
        Suite::Pregroupoid,
        Suite::Splitting,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::GroupoidLaws => "groupoid-laws",
            Suite::Bijection => "bijection",
            Suite::Algebroid => "algebroid",
            Suite::Pregroupoid => "pregroupoid",
            Suite::Splitting => "splitting",
        }
    }

    /// Suites that need a groupoid rather than a pregroupoid.
    pub fn needs_groupoid(self) -> bool {
        matches!(self, Suite::GroupoidLaws | Suite::Bijection | Suite::Algebroid)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExampleSource {
    /// A registry key such as `pair-groupoid:2`.
    Builtin(String),
    /// A finite table file.
    File(PathBuf),
}

impl fmt::Display for ExampleSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExampleSource::Builtin(key) => f.write_str(key),
            ExampleSource::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub backend: Backend,
    pub example: ExampleSource,
    /// Empty means every suite that applies to the example.
    pub suites: Vec<Suite>,
    /// Jet tolerance override; the finite backend is exact.
    pub tolerance: Option<f64>,
    pub samples: usize,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn new(backend: Backend, example: ExampleSource) -> Self {
        let plan = SamplePlan::default();
        SuiteConfig {
            backend,
            example,
            suites: Vec::new(),
            tolerance: None,
            samples: plan.count,
            seed: plan.seed,
        }
    }

    pub fn plan(&self) -> SamplePlan {
        SamplePlan::new(self.samples, self.seed)
    }

    /// Checks the combinations that are invalid before anything is loaded.
    pub fn validate(&self) -> Result<(), String> {
        if self.backend == Backend::Finite && self.suites.contains(&Suite::Algebroid) {
            return Err("the algebroid suite needs the jet backend".into());
        }
        if self.backend == Backend::Jet {
            if let ExampleSource::File(_) = self.example {
                return Err("table files describe finite examples; use --backend finite".into());
            }
        }
        if self.backend == Backend::Finite && self.tolerance.is_some() {
            return Err("--tolerance applies to the jet backend; the finite backend is exact".into());
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(format!("tolerance must be a non-negative number, got {t}"));
            }
        }
        if self.samples == 0 {
            return Err("--samples must be positive".into());
        }
        Ok(())
    }
}
