use super::FieldError;
use crate::arith::{is_squarefree, squarefree_part, RatFunc, UniPoly};
use std::sync::Arc;

/// `Q(x)(r_1, ..., r_k)` with `r_i^2 = f_i`, `k <= 2`.
///
/// Basis monomials are indexed by bitmasks: bit `i` set means the factor `r_(i+1)`.
#[derive(Debug, Clone)]
pub struct TowerPresentation {
    var: String,
    radicands: Vec<UniPoly>,
    names: Vec<String>,
    /// `m_mask^2` as a base element.
    mono_sq: Vec<RatFunc>,
    /// `D(m_mask) / m_mask`.
    log_deriv: Vec<RatFunc>,
    /// Square-class core and cofactor of `m_mask^2`.
    classes: Vec<(UniPoly, UniPoly)>,
}

pub const MAX_DEPTH: usize = 2;

impl PartialEq for TowerPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.var == other.var && self.radicands == other.radicands && self.names == other.names
    }
}

impl Eq for TowerPresentation {}

impl TowerPresentation {
    /// The base field `Q(var)`.
    pub fn base(var: &str) -> Arc<Self> {
        Self::new(var, Vec::new(), Vec::new()).expect("base field")
    }

    /// Builds a tower from canonical radicands (as returned by `squarefree_part`).
    pub fn new(
        var: &str,
        radicands: Vec<UniPoly>,
        names: Vec<String>,
    ) -> Result<Arc<Self>, FieldError> {
        if radicands.len() > MAX_DEPTH {
            return Err(FieldError::DepthExceeded);
        }
        if radicands.len() != names.len() {
            return Err(FieldError::Malformed("one name per radicand".into()));
        }
        for f in &radicands {
            if !is_squarefree(f) {
                return Err(FieldError::NotSquarefree(f.to_expr(var)));
            }
            let (core, _) = squarefree_part(f)?;
            if &core != f {
                return Err(FieldError::Malformed(format!(
                    "radicand {} is not in canonical form",
                    f.to_expr(var)
                )));
            }
        }
        let n = 1usize << radicands.len();
        let mut mono_sq = Vec::with_capacity(n);
        let mut log_deriv = Vec::with_capacity(n);
        let mut classes = Vec::with_capacity(n);
        for mask in 0..n {
            let mut sq = UniPoly::one();
            let mut ld = RatFunc::zero();
            for (i, f) in radicands.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    sq = &sq * f;
                    let half = crate::arith::rat(1, 2);
                    ld = &ld + &RatFunc::new(f.derivative().scale(&half), f.clone());
                }
            }
            let class = squarefree_part(&sq)?;
            if mask != 0 && class.0.is_one() {
                return Err(FieldError::Reducible(sq.to_expr(var)));
            }
            mono_sq.push(RatFunc::from_poly(sq));
            log_deriv.push(ld);
            classes.push(class);
        }
        Ok(Arc::new(TowerPresentation {
            var: var.to_string(),
            radicands,
            names,
            mono_sq,
            log_deriv,
            classes,
        }))
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn depth(&self) -> usize {
        self.radicands.len()
    }

    pub fn basis_len(&self) -> usize {
        1 << self.radicands.len()
    }

    pub fn radicands(&self) -> &[UniPoly] {
        &self.radicands
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn mono_square(&self, mask: usize) -> &RatFunc {
        &self.mono_sq[mask]
    }

    pub fn log_derivative(&self, mask: usize) -> &RatFunc {
        &self.log_deriv[mask]
    }

    /// `(core, cofactor)` with `m_mask^2 = core * cofactor^2`.
    pub fn class_of(&self, mask: usize) -> &(UniPoly, UniPoly) {
        &self.classes[mask]
    }

    /// Mask whose monomial lies in the square class of `core`, if any.
    pub fn find_class(&self, core: &UniPoly) -> Option<usize> {
        (1..self.basis_len()).find(|&m| &self.classes[m].0 == core)
    }

    pub fn square_classes(&self) -> SquareClassSet {
        SquareClassSet {
            classes: self.classes.iter().skip(1).map(|c| c.0.clone()).collect(),
        }
    }

    /// Name of a basis monomial, e.g. `v*w1`; `1` for the empty mask.
    pub fn monomial_name(&self, mask: usize) -> String {
        let parts: Vec<&str> = (0..self.depth())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.names[i].as_str())
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Same tower with renamed generators.
    pub fn renamed(&self, names: Vec<String>) -> Result<Arc<Self>, FieldError> {
        Self::new(&self.var, self.radicands.clone(), names)
    }

    /// Tower over a different variable name with the same radicands.
    pub fn with_var(&self, var: &str) -> Result<Arc<Self>, FieldError> {
        Self::new(var, self.radicands.clone(), self.names.clone())
    }

    /// Appends a radicand (canonical, not already a class of this tower).
    pub fn extend(&self, radicand: UniPoly, name: &str) -> Result<Arc<Self>, FieldError> {
        let mut r = self.radicands.clone();
        let mut n = self.names.clone();
        r.push(radicand);
        n.push(name.to_string());
        Self::new(&self.var, r, n)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("var {}\n", self.var);
        for (name, f) in self.names.iter().zip(&self.radicands) {
            out.push_str(&format!("root {}^2 = {}\n", name, f.to_expr(&self.var)));
        }
        out
    }
}

/// The nontrivial square classes generated by a tower's radicands.
#[derive(Debug, Clone)]
pub struct SquareClassSet {
    classes: Vec<UniPoly>,
}

impl SquareClassSet {
    pub fn classes(&self) -> &[UniPoly] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains(&self, core: &UniPoly) -> bool {
        self.classes.contains(core)
    }
}

impl PartialEq for SquareClassSet {
    fn eq(&self, other: &Self) -> bool {
        self.classes.len() == other.classes.len() && self.classes.iter().all(|c| other.contains(c))
    }
}

impl Eq for SquareClassSet {}
