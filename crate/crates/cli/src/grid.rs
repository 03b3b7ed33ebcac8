use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// `start:stop:count:spacing`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == self.count - 1 {
                    return self.stop;
                }
                let s = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.start + s * (self.stop - self.start),
                    Spacing::Log => (self.start.ln() + s * (self.stop.ln() - self.start.ln())).exp(),
                }
            })
            .collect()
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, count, spacing] = parts[..] else {
            return Err(format!("expected start:stop:count:linear|log, got '{s}'"));
        };
        let num = |v: &str, what: &str| v.parse::<f64>().map_err(|e| format!("bad {what} '{v}': {e}"));
        let start = num(start, "start")?;
        let stop = num(stop, "stop")?;
        let count: usize = count.parse().map_err(|e| format!("bad count '{count}': {e}"))?;
        let spacing = match spacing {
            "linear" | "lin" => Spacing::Linear,
            "log" => Spacing::Log,
            other => return Err(format!("spacing must be linear or log, got '{other}'")),
        };
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(format!("grid needs finite start < stop, got {start}:{stop}"));
        }
        if count < 2 {
            return Err(format!("grid needs at least 2 points, got {count}"));
        }
        if spacing == Spacing::Log && start <= 0.0 {
            return Err(format!("log spacing needs start > 0, got {start}"));
        }
        Ok(Self {
            start,
            stop,
            count,
            spacing,
        })
    }
}
