use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    D,
    PcOverPfDb,
    AlphaFo,
    /// Femtocell antenna count; U_f is clamped to it.
    TfUf,
    Mtw,
}

impl SweepVar {
    pub fn name(self) -> &'static str {
        match self {
            SweepVar::D => "d_norm",
            SweepVar::PcOverPfDb => "pc_over_pf_db",
            SweepVar::AlphaFo => "alpha_fo",
            SweepVar::TfUf => "t_f",
            SweepVar::Mtw => "m_tw",
        }
    }

    fn integral(self) -> bool {
        matches!(self, SweepVar::TfUf | SweepVar::Mtw)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVar,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepParseError(String);

impl fmt::Display for SweepParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SweepParseError {}

impl FromStr for SweepSpec {
    type Err = SweepParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |m: String| SweepParseError(m);
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(err(format!("expected <var>:<start>:<stop>:<steps>, got '{s}'")));
        }
        let variable = match parts[0].to_ascii_lowercase().as_str() {
            "d" => SweepVar::D,
            "pcoverpfdb" | "pc_over_pf_db" => SweepVar::PcOverPfDb,
            "alphafo" | "alpha_fo" => SweepVar::AlphaFo,
            "tfuf" | "t_f" => SweepVar::TfUf,
            "mtw" | "m_tw" => SweepVar::Mtw,
            other => {
                return Err(err(format!(
                    "unknown sweep variable '{other}' (D, PcOverPfDb, AlphaFo, TfUf, Mtw)"
                )))
            }
        };
        let num = |t: &str| t.parse::<f64>().map_err(|e| err(format!("bad number '{t}': {e}")));
        let (start, stop) = (num(parts[1])?, num(parts[2])?);
        let steps: usize = parts[3]
            .parse()
            .map_err(|e| err(format!("bad step count '{}': {e}", parts[3])))?;
        if steps < 2 {
            return Err(err(format!("steps must be >= 2, got {steps}")));
        }
        if !(start < stop) || !start.is_finite() || !stop.is_finite() {
            return Err(err(format!("need start < stop, got {start} and {stop}")));
        }
        Ok(SweepSpec {
            variable,
            start,
            stop,
            steps,
        })
    }
}

impl SweepSpec {
    /// Grid points; integer variables are rounded and deduplicated.
    pub fn values(&self) -> Vec<f64> {
        let n = self.steps - 1;
        let mut v: Vec<f64> = (0..=n)
            .map(|i| self.start + (self.stop - self.start) * i as f64 / n as f64)
            .collect();
        if self.variable.integral() {
            for x in &mut v {
                *x = x.round();
            }
            v.dedup();
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_expands() {
        let s: SweepSpec = "D:0.1:1.0:10".parse().unwrap();
        assert_eq!(s.variable, SweepVar::D);
        let v = s.values();
        assert_eq!(v.len(), 10);
        assert!((v[0] - 0.1).abs() < 1e-15 && (v[9] - 1.0).abs() < 1e-15);
        let t: SweepSpec = "TfUf:1:4:7".parse().unwrap();
        assert_eq!(t.values(), vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["D:1:0:5", "D:0:1:1", "X:0:1:5", "D:0:1", "D:a:1:3", "D:0:1:-2"] {
            assert!(bad.parse::<SweepSpec>().is_err(), "{bad}");
        }
    }
}
