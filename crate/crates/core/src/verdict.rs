use serde::Serialize;

/// Outcome of a convergence classification.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", content = "value", rename_all = "lowercase")]
pub enum Verdict {
    Finite(f64),
    Divergent,
    Undetermined,
}

impl Verdict {
    pub fn is_finite(&self) -> bool {
        matches!(self, Verdict::Finite(_))
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, Verdict::Divergent)
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            Verdict::Finite(v) => Some(*v),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Finite(_) => "finite",
            Verdict::Divergent => "divergent",
            Verdict::Undetermined => "undetermined",
        }
    }
}

/// Three-way status of an asserted check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    /// Process exit code: 0 pass, 2 inconclusive, 1 failure.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Inconclusive => 2,
            Status::Fail => 1,
        }
    }

    /// Worst of two statuses.
    pub fn and(self, other: Status) -> Status {
        self.max(other)
    }
}
