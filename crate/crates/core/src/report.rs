use std::fmt;

/// Nonzero residual terms per degree and equation. A check passes when
/// every count is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeReport {
    lines: Vec<ReportLine>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportLine {
    pub degree: usize,
    pub equation: String,
    pub residual_terms: usize,
}

impl DegreeReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, degree: usize, equation: &str, residual_terms: usize) {
        self.lines.push(ReportLine { degree, equation: equation.to_string(), residual_terms });
    }

    pub fn extend(&mut self, other: DegreeReport) {
        self.lines.extend(other.lines);
    }

    pub fn lines(&self) -> &[ReportLine] {
        &self.lines
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.residual_terms == 0)
    }

    pub fn passed_equation(&self, equation: &str) -> bool {
        self.lines.iter().filter(|l| l.equation == equation).all(|l| l.residual_terms == 0)
    }

    pub fn residual(&self, degree: usize, equation: &str) -> Option<usize> {
        self.lines.iter().find(|l| l.degree == degree && l.equation == equation).map(|l| l.residual_terms)
    }

    /// Lowest degree with a nonzero residual.
    pub fn first_failure(&self) -> Option<&ReportLine> {
        self.lines.iter().filter(|l| l.residual_terms != 0).min_by_key(|l| l.degree)
    }
}

impl fmt::Display for DegreeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "deg={} eq={} residual_terms={}", l.degree, l.equation, l.residual_terms)?;
        }
        Ok(())
    }
}
