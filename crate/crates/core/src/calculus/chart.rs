use std::fmt;
use std::sync::Arc;

use crate::error::{GgError, Result};
use crate::symexpr::ScalarExpr;

/// A named coordinate chart with ordered, pairwise distinct coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chart {
    name: Arc<str>,
    coords: Vec<Arc<str>>,
}

pub type ChartRef = Arc<Chart>;

impl Chart {
    pub fn new(name: &str, coords: &[&str]) -> Result<ChartRef> {
        if coords.is_empty() {
            return Err(GgError::Dimension(format!("chart {name} has no coordinates")));
        }
        for (k, c) in coords.iter().enumerate() {
            if coords[..k].contains(c) {
                return Err(GgError::Dimension(format!("chart {name}: coordinate '{c}' repeated")));
            }
            if matches!(*c, "sin" | "cos" | "exp") {
                return Err(GgError::Dimension(format!("chart {name}: '{c}' is reserved")));
            }
        }
        Ok(Arc::new(Chart { name: Arc::from(name), coords: coords.iter().map(|c| Arc::from(*c)).collect() }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Arc<str>] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> ScalarExpr {
        ScalarExpr::sym(&self.coords[i])
    }

    pub fn index_of(&self, sym: &str) -> Option<usize> {
        self.coords.iter().position(|c| &**c == sym)
    }

    /// `∂e/∂(coordinate i)`.
    pub fn d(&self, e: &ScalarExpr, i: usize) -> ScalarExpr {
        e.diff(&self.coords[i])
    }

    /// Derivative by coordinate name, refusing symbols of other charts.
    pub fn differentiate(&self, e: &ScalarExpr, sym: &str) -> Result<ScalarExpr> {
        if self.index_of(sym).is_none() {
            return Err(GgError::UnknownCoordinate { chart: self.name.to_string(), symbol: sym.to_string() });
        }
        Ok(e.diff(sym))
    }

    /// Symbols of `e` that are not coordinates of this chart.
    pub fn foreign_symbols(&self, e: &ScalarExpr) -> Vec<String> {
        e.symbols().into_iter().filter(|s| self.index_of(s).is_none()).map(|s| s.to_string()).collect()
    }

    /// `M × ℝ` with the extra coordinate `t` appended.
    pub fn product_with_line(&self, t: &str) -> Result<ChartRef> {
        if self.index_of(t).is_some() {
            return Err(GgError::Dimension(format!("coordinate '{t}' already used on chart {}", self.name)));
        }
        let mut coords: Vec<&str> = self.coords.iter().map(|c| &**c).collect();
        coords.push(t);
        Chart::new(&format!("{}xR", self.name), &coords)
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.name)?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn same_chart(a: &ChartRef, b: &ChartRef) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(GgError::ChartMismatch(format!("{a} vs {b}")))
    }
}
