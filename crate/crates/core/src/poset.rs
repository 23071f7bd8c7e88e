//! Finite posets: construction from cover relations, order queries, bounds,
//! cones, and property checks for unary operations.

use crate::error::{Error, Result};
use crate::tables::UnaryTable;

/// A finite poset over named elements. The relation is stored as a dense
/// reflexive-transitive boolean table indexed by element position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    elements: Vec<String>,
    leq: Vec<bool>,
    n: usize,
}

/// Common upper and lower bounds of a pair, as element positions in
/// declared order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConePair {
    pub upper: Vec<usize>,
    pub lower: Vec<usize>,
}

/// Outcome of `unary_properties`: each failed flag carries the
/// lexicographically least violating tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnaryProperties {
    /// `None` when antitone; otherwise the least pair (x, y) with x <= y but
    /// not u(y) <= u(x).
    pub antitone: Option<(usize, usize)>,
    /// `None` when an involution; otherwise the least x with u(u(x)) != x.
    pub involution: Option<usize>,
    /// `None` when surjective; otherwise the least element missing from the image.
    pub surjective: Option<usize>,
}

impl UnaryProperties {
    pub fn is_antitone(&self) -> bool {
        self.antitone.is_none()
    }
    pub fn is_involution(&self) -> bool {
        self.involution.is_none()
    }
    pub fn is_surjective(&self) -> bool {
        self.surjective.is_none()
    }
}

fn check_names(elements: &[String]) -> Result<()> {
    for (i, e) in elements.iter().enumerate() {
        if e.is_empty() || e.chars().any(|c| c.is_whitespace()) {
            return Err(Error::UnknownName(e.clone()));
        }
        if elements[..i].contains(e) {
            return Err(Error::DuplicateElement(e.clone()));
        }
    }
    Ok(())
}

impl FinitePoset {
    /// Build from a list of comparabilities `(lower, upper)`. Redundant
    /// (non-covering) pairs are accepted; the stored relation is the
    /// reflexive-transitive closure.
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let elements: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        check_names(&elements)?;
        let n = elements.len();
        let idx = |name: &str| -> Result<usize> {
            elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| Error::UnknownName(name.to_string()))
        };
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in covers {
            leq[idx(lo.as_ref())? * n + idx(hi.as_ref())?] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::CycleDetected(elements[i].clone(), elements[j].clone()));
                }
            }
        }
        Ok(FinitePoset { elements, leq, n })
    }

    /// Build from a full relation table, validating reflexivity,
    /// antisymmetry, and transitivity.
    pub fn from_leq(elements: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        check_names(&elements)?;
        let n = elements.len();
        if leq.len() != n * n {
            return Err(Error::ValidationError {
                axiom: "relation size".into(),
                witness: format!("{} entries for {n} elements", leq.len()),
            });
        }
        let p = FinitePoset { elements, leq, n };
        for i in 0..n {
            if !p.le(i, i) {
                return Err(Error::ValidationError {
                    axiom: "reflexivity".into(),
                    witness: p.elements[i].clone(),
                });
            }
            for j in 0..n {
                if i != j && p.le(i, j) && p.le(j, i) {
                    return Err(Error::CycleDetected(p.elements[i].clone(), p.elements[j].clone()));
                }
                for k in 0..n {
                    if p.le(i, j) && p.le(j, k) && !p.le(i, k) {
                        return Err(Error::ValidationError {
                            axiom: "transitivity".into(),
                            witness: format!("{} {} {}", p.elements[i], p.elements[j], p.elements[k]),
                        });
                    }
                }
            }
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn leq_table(&self) -> &[bool] {
        &self.leq
    }

    /// The unique bottom / top elements, when they exist.
    pub fn bounds(&self) -> (Option<usize>, Option<usize>) {
        let bottom = (0..self.n).find(|&b| (0..self.n).all(|x| self.le(b, x)));
        let top = (0..self.n).find(|&t| (0..self.n).all(|x| self.le(x, t)));
        (bottom, top)
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bounds().0
    }

    pub fn top(&self) -> Option<usize> {
        self.bounds().1
    }

    pub fn cones(&self, a: usize, b: usize) -> ConePair {
        let upper = (0..self.n).filter(|&x| self.le(a, x) && self.le(b, x)).collect();
        let lower = (0..self.n).filter(|&x| self.le(x, a) && self.le(x, b)).collect();
        ConePair { upper, lower }
    }

    pub fn cones_by_name(&self, a: &str, b: &str) -> Result<ConePair> {
        Ok(self.cones(self.index(a)?, self.index(b)?))
    }

    /// Least upper bound of a pair, if unique.
    pub fn lub(&self, a: usize, b: usize) -> Option<usize> {
        let upper = self.cones(a, b).upper;
        let mut minimal = upper
            .iter()
            .copied()
            .filter(|&x| upper.iter().all(|&y| !self.le(y, x) || y == x));
        match (minimal.next(), minimal.next()) {
            (Some(m), None) => Some(m),
            _ => None,
        }
    }

    /// Greatest lower bound of a pair, if unique.
    pub fn glb(&self, a: usize, b: usize) -> Option<usize> {
        let lower = self.cones(a, b).lower;
        let mut maximal = lower
            .iter()
            .copied()
            .filter(|&x| lower.iter().all(|&y| !self.le(x, y) || y == x));
        match (maximal.next(), maximal.next()) {
            (Some(m), None) => Some(m),
            _ => None,
        }
    }

    /// Covering pairs (a, b): a < b with nothing strictly between.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if a == b || !self.le(a, b) {
                    continue;
                }
                let gap = (0..self.n).any(|c| c != a && c != b && self.le(a, c) && self.le(c, b));
                if !gap {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Relabel elements; the order itself is unchanged.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        check_names(&names)?;
        if names.len() != self.n {
            return Err(Error::ValidationError {
                axiom: "rename size".into(),
                witness: format!("{}", names.len()),
            });
        }
        Ok(FinitePoset { elements: names, leq: self.leq.clone(), n: self.n })
    }

    /// Checks antitonicity, involutivity, and surjectivity of a unary table.
    pub fn unary_properties(&self, u: &UnaryTable) -> UnaryProperties {
        let n = self.n;
        let mut antitone = None;
        'outer: for x in 0..n {
            for y in 0..n {
                if self.le(x, y) && !self.le(u.apply(y), u.apply(x)) {
                    antitone = Some((x, y));
                    break 'outer;
                }
            }
        }
        let involution = (0..n).find(|&x| u.apply(u.apply(x)) != x);
        let mut hit = vec![false; n];
        for x in 0..n {
            hit[u.apply(x)] = true;
        }
        let surjective = (0..n).find(|&x| !hit[x]);
        UnaryProperties { antitone, involution, surjective }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n5() -> FinitePoset {
        FinitePoset::from_covers(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("a", "c"), ("b", "1"), ("c", "1")],
        )
        .unwrap()
    }

    #[test]
    fn two_chain() {
        let p = FinitePoset::from_covers(&["0", "1"], &[("0", "1")]).unwrap();
        assert!(p.le(0, 1));
        assert!(!p.le(1, 0));
        assert_eq!(p.bounds(), (Some(0), Some(1)));
    }

    #[test]
    fn n5_order() {
        let p = n5();
        let a = p.index("a").unwrap();
        let b = p.index("b").unwrap();
        let c = p.index("c").unwrap();
        assert!(p.le(a, c));
        assert!(!p.le(a, b) && !p.le(b, a));
        assert_eq!(p.bounds(), (Some(0), Some(4)));
    }

    #[test]
    fn cycle_detected() {
        let err = FinitePoset::from_covers(&["0", "1"], &[("0", "1"), ("1", "0")]).unwrap_err();
        assert!(matches!(err, Error::CycleDetected(..)));
    }

    #[test]
    fn duplicate_and_unknown() {
        assert!(matches!(
            FinitePoset::from_covers(&["a", "a"], &[]).unwrap_err(),
            Error::DuplicateElement(_)
        ));
        assert!(matches!(
            FinitePoset::from_covers(&["a"], &[("a", "b")]).unwrap_err(),
            Error::UnknownName(_)
        ));
    }

    #[test]
    fn antichain_has_no_bounds() {
        let p = FinitePoset::from_covers(&["x", "y"], &[]).unwrap();
        assert_eq!(p.bounds(), (None, None));
    }

    #[test]
    fn idempotent_cones_are_up_and_down_sets() {
        let p = n5();
        let c = p.index("c").unwrap();
        let cones = p.cones(c, c);
        let up: Vec<usize> = (0..p.len()).filter(|&x| p.le(c, x)).collect();
        let down: Vec<usize> = (0..p.len()).filter(|&x| p.le(x, c)).collect();
        assert_eq!(cones.upper, up);
        assert_eq!(cones.lower, down);
    }

    #[test]
    fn n5_involution_witness_with_bprime_a() {
        // b' = a makes c'' = b' = a != c
        let p = n5();
        let table = ["1", "b", "a", "b", "0"].map(|s| p.index(s).unwrap());
        let u = UnaryTable::new(table.to_vec()).unwrap();
        let props = p.unary_properties(&u);
        assert_eq!(props.involution, Some(p.index("c").unwrap()));
    }

    #[test]
    fn identity_map_involutive_not_antitone_on_chain() {
        let p = FinitePoset::from_covers(&["0", "1"], &[("0", "1")]).unwrap();
        let props = p.unary_properties(&UnaryTable::identity(2));
        assert!(props.is_involution());
        assert_eq!(props.antitone, Some((0, 1)));
        assert!(props.is_surjective());
    }

    #[test]
    fn redundant_covers_are_normalized() {
        let direct = FinitePoset::from_covers(&["0", "m", "1"], &[("0", "m"), ("m", "1")]).unwrap();
        let redundant =
            FinitePoset::from_covers(&["0", "m", "1"], &[("0", "m"), ("m", "1"), ("0", "1")])
                .unwrap();
        assert_eq!(direct, redundant);
    }
}
