use std::fmt;
use std::str::FromStr;

/// Inclusive integer range `start:end[:step]`; a bare integer is a one-point range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub start: u64,
    pub end: u64,
    pub step: u64,
}

impl IntRange {
    pub fn point(x: u64) -> Self {
        Self { start: x, end: x, step: 1 }
    }

    pub fn iter(self) -> impl Iterator<Item = u64> + Clone {
        (self.start..=self.end).step_by(self.step as usize)
    }

    /// Largest value actually visited.
    pub fn last(self) -> u64 {
        self.start + (self.end - self.start) / self.step * self.step
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.end, self.step)
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("invalid integer {t:?} in range {s:?}: {e}"));
        let (start, end, step) = match parts.as_slice() {
            [x] => (num(x)?, num(x)?, 1),
            [a, b] => (num(a)?, num(b)?, 1),
            [a, b, st] => (num(a)?, num(b)?, num(st)?),
            _ => return Err(format!("range {s:?} must look like a, a:b or a:b:step")),
        };
        if step == 0 {
            return Err(format!("range {s:?} has step 0"));
        }
        if start > end {
            return Err(format!("range {s:?} is empty (start > end)"));
        }
        Ok(Self { start, end, step })
    }
}
