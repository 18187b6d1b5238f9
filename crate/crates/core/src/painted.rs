//! Painted Dynkin diagrams and their Koszul data.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Q};
use crate::rootspace::{root_system, AlgebraType, Family, RootSystem, Weight};

/// Type of a connected white subdiagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    /// A chain of type `A_k` that is not a tail; an `su_{k+1}` ideal.
    AString,
    /// B family, component containing the short root `α_ℓ`: `so_{2r+1}`.
    BTail,
    /// C family, component containing the long root `α_ℓ`: `sp_r`.
    CTail,
    /// D family, component containing both fork tips: `so_{2r}`, `r ≥ 3`.
    DTail,
    /// D family, one of the two white tips when `α_{ℓ−2}` is black (`so_4 = su_2 ⊕ su_2`).
    DForkHalf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhiteComponent {
    /// Node indices in ascending order.
    pub nodes: Vec<usize>,
    pub kind: ComponentKind,
}

/// A white `A_{m−1}` string usable as the fibre ideal of an admissible bundle.
///
/// Nodes ascend along the path; the left end is the first node, the right
/// end the last (a fork tip for D strings reaching the fork).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WhiteString {
    nodes: Vec<usize>,
}

impl WhiteString {
    /// Identifier: the smallest node index.
    pub fn start(&self) -> usize {
        self.nodes[0]
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn left(&self) -> usize {
        self.nodes[0]
    }

    pub fn right(&self) -> usize {
        *self.nodes.last().expect("strings are nonempty")
    }

    pub fn contains(&self, node: usize) -> bool {
        self.nodes.contains(&node)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulData {
    pub sigma: Weight,
    /// Black node index ↦ Koszul number.
    pub numbers: BTreeMap<usize, i64>,
}

impl KoszulData {
    /// Koszul numbers in black-node order.
    pub fn values(&self) -> Vec<i64> {
        self.numbers.values().copied().collect()
    }
}

#[derive(Clone)]
pub struct PaintedDiagram {
    algebra: AlgebraType,
    black: Vec<usize>,
    roots: Arc<RootSystem>,
    koszul: Arc<OnceLock<KoszulData>>,
}

impl PartialEq for PaintedDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.black == other.black
    }
}

impl Eq for PaintedDiagram {}

impl fmt::Debug for PaintedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PaintedDiagram({self})")
    }
}

impl fmt::Display for PaintedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.algebra, self.mask())
    }
}

impl PaintedDiagram {
    pub fn new(algebra: AlgebraType, black: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut black: Vec<usize> = black.into_iter().collect();
        black.sort_unstable();
        black.dedup();
        if let Some(&bad) = black.iter().find(|&&j| j == 0 || j > algebra.rank()) {
            return Err(Error::usage(format!(
                "black node {bad} out of range 1..={} for {algebra}",
                algebra.rank()
            )));
        }
        Ok(PaintedDiagram {
            algebra,
            black,
            roots: root_system(algebra),
            koszul: Arc::new(OnceLock::new()),
        })
    }

    /// Parses the `<family><rank>:<mask>` notation, e.g. `A11:oo*oo*ooooo`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut chars = text.char_indices();
        let family = match chars.next() {
            Some((_, c)) => Family::from_letter(c).ok_or_else(|| {
                Error::parse(0, format!("unknown family `{c}`; expected one of A, B, C, D"))
            })?,
            None => return Err(Error::parse(0, "empty diagram")),
        };
        let colon = text
            .find(':')
            .ok_or_else(|| Error::parse(text.len(), "expected `:` after the rank"))?;
        let rank_text = &text[1..colon];
        if rank_text.is_empty() || !rank_text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(1, format!("invalid rank `{rank_text}`")));
        }
        let rank: usize = rank_text
            .parse()
            .map_err(|_| Error::parse(1, format!("rank `{rank_text}` is too large")))?;
        let algebra = AlgebraType::new(family, rank).map_err(|e| match e {
            Error::Config(msg) => Error::parse(1, msg),
            other => other,
        })?;
        let mask = &text[colon + 1..];
        let mut black = Vec::new();
        let mut count = 0;
        for (i, c) in mask.char_indices() {
            let offset = colon + 1 + i;
            if count == rank {
                return Err(Error::parse(
                    offset,
                    format!("mask is longer than the rank {rank}"),
                ));
            }
            match c {
                'o' => {}
                '*' => black.push(count + 1),
                other => {
                    return Err(Error::parse(
                        offset,
                        format!("unexpected `{other}` in mask; use `o` (white) or `*` (black)"),
                    ))
                }
            }
            count += 1;
        }
        if count < rank {
            return Err(Error::parse(
                text.len(),
                format!("mask has {count} nodes but the rank is {rank}"),
            ));
        }
        PaintedDiagram::new(algebra, black)
    }

    /// `o`/`*` string, nodes in index order.
    pub fn mask(&self) -> String {
        (1..=self.algebra.rank())
            .map(|j| if self.is_black(j) { '*' } else { 'o' })
            .collect()
    }

    pub fn algebra(&self) -> AlgebraType {
        self.algebra
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    pub fn black(&self) -> &[usize] {
        &self.black
    }

    pub fn is_black(&self, node: usize) -> bool {
        self.black.binary_search(&node).is_ok()
    }

    pub fn white(&self) -> Vec<usize> {
        (1..=self.rank()).filter(|&j| !self.is_black(j)).collect()
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.roots
    }

    /// Same algebra with `node` painted black.
    pub fn with_black(&self, node: usize) -> Result<Self> {
        PaintedDiagram::new(self.algebra, self.black.iter().copied().chain([node]))
    }

    pub fn white_components(&self) -> Vec<WhiteComponent> {
        let l = self.rank();
        let mut seen = vec![false; l + 1];
        let mut out = Vec::new();
        for start in 1..=l {
            if seen[start] || self.is_black(start) {
                continue;
            }
            let mut nodes = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < nodes.len() {
                let x = nodes[i];
                for y in self.roots.neighbors(x) {
                    if !seen[y] && !self.is_black(y) {
                        seen[y] = true;
                        nodes.push(y);
                    }
                }
                i += 1;
            }
            nodes.sort_unstable();
            let kind = self.component_kind(&nodes);
            out.push(WhiteComponent { nodes, kind });
        }
        out
    }

    fn component_kind(&self, nodes: &[usize]) -> ComponentKind {
        let l = self.rank();
        match self.algebra.family() {
            Family::A => ComponentKind::AString,
            Family::B if nodes.contains(&l) => ComponentKind::BTail,
            Family::C if nodes.contains(&l) => ComponentKind::CTail,
            Family::B | Family::C => ComponentKind::AString,
            Family::D => {
                let tips = (nodes.contains(&(l - 1)), nodes.contains(&l));
                match tips {
                    (true, true) => ComponentKind::DTail,
                    (true, false) | (false, true)
                        if nodes.len() == 1
                            && self.is_black(l - 2)
                            && !self.is_black(l - 1)
                            && !self.is_black(l) =>
                    {
                        ComponentKind::DForkHalf
                    }
                    _ => ComponentKind::AString,
                }
            }
        }
    }

    /// White `A`-strings that can carry an admissible bundle, ordered by start node.
    pub fn admissible_strings(&self) -> Vec<WhiteString> {
        self.white_components()
            .into_iter()
            .filter(|c| c.kind == ComponentKind::AString)
            .map(|c| WhiteString { nodes: c.nodes })
            .collect()
    }

    /// The admissible string whose smallest node is `start`.
    pub fn string_at(&self, start: usize) -> Result<WhiteString> {
        self.admissible_strings()
            .into_iter()
            .find(|s| s.start() == start)
            .ok_or_else(|| {
                Error::usage(format!(
                    "{self}: no admissible white string starts at node {start}"
                ))
            })
    }

    fn has_black_support(&self, coeffs: &[i64]) -> bool {
        self.black.iter().any(|&j| coeffs[j - 1] != 0)
    }

    /// Positive roots with nonzero coefficient on some black simple root.
    pub fn r_m_plus(&self) -> Vec<Weight> {
        self.roots
            .positive
            .iter()
            .zip(&self.roots.positive_coeffs)
            .filter(|(_, c)| self.has_black_support(c))
            .map(|(r, _)| r.clone())
            .collect()
    }

    /// Positive roots spanned by the white simple roots (complement of `r_m_plus`).
    pub fn white_positive_roots(&self) -> Vec<Weight> {
        self.roots
            .positive
            .iter()
            .zip(&self.roots.positive_coeffs)
            .filter(|(_, c)| !self.has_black_support(c))
            .map(|(r, _)| r.clone())
            .collect()
    }

    /// Koszul form by root summation; cached per diagram value.
    pub fn koszul(&self) -> Result<KoszulData> {
        if self.black.is_empty() {
            return Err(Error::domain(format!(
                "{self} has no black node: not a proper flag manifold"
            )));
        }
        Ok(self.koszul.get_or_init(|| self.compute_koszul()).clone())
    }

    pub(crate) fn koszul_numbers(&self) -> Result<BTreeMap<usize, i64>> {
        if self.black.is_empty() {
            return Ok(BTreeMap::new());
        }
        Ok(self.koszul()?.numbers)
    }

    fn compute_koszul(&self) -> KoszulData {
        let mut sigma = Weight::zero(self.algebra);
        for root in self.r_m_plus() {
            sigma = &sigma + &root;
        }
        let numbers = self
            .black
            .iter()
            .map(|&j| {
                let n = sigma.coroot_pairing(self.roots.simple_root(j));
                debug_assert!(n.is_integer() && n.is_positive());
                (j, n.to_integer().to_i64().expect("Koszul numbers are small"))
            })
            .collect();
        KoszulData { sigma, numbers }
    }

    /// Combinatorial Koszul numbers: `n_j = 2 + b_j` with `b_j` the weighted
    /// count of white nodes in the components adjacent to `β_j`. Tails count
    /// `2r−1` (B), `2r` (C), `2(r−1)` (D). `None` marks the cases where the
    /// counting rule is ambiguous: a black short root `α_ℓ` of B with a white
    /// neighbour, and a D fork tip that is the only black tip.
    pub fn koszul_by_rule(&self) -> BTreeMap<usize, Option<i64>> {
        let l = self.rank();
        let components = self.white_components();
        self.black
            .iter()
            .map(|&j| {
                let ambiguous = match self.algebra.family() {
                    Family::B => j == l && l > 1 && !self.is_black(l - 1),
                    Family::D => {
                        (j == l - 1 || j == l) && (self.is_black(l - 1) != self.is_black(l))
                    }
                    _ => false,
                };
                if ambiguous {
                    return (j, None);
                }
                let b: usize = components
                    .iter()
                    .filter(|c| c.nodes.iter().any(|&x| self.roots.is_adjacent(j, x)))
                    .map(|c| {
                        let r = c.nodes.len();
                        match c.kind {
                            ComponentKind::AString | ComponentKind::DForkHalf => r,
                            ComponentKind::BTail => 2 * r - 1,
                            ComponentKind::CTail => 2 * r,
                            ComponentKind::DTail => 2 * (r - 1),
                        }
                    })
                    .sum();
                (j, Some(b as i64 + 2))
            })
            .collect()
    }

    /// Coordinates `2⟨xi, β_j⟩/⟨β_j, β_j⟩` on the black fundamental weights.
    pub fn coordinates(&self, xi: &Weight) -> Vec<Q> {
        self.black
            .iter()
            .map(|&j| xi.coroot_pairing(self.roots.simple_root(j)))
            .collect()
    }

    /// `Σ coeffs_j π_j` over the black nodes in order.
    pub fn combination(&self, coeffs: &[Q]) -> Result<Weight> {
        if coeffs.len() != self.black.len() {
            return Err(Error::usage(format!(
                "{self} has {} black nodes, got {} coefficients",
                self.black.len(),
                coeffs.len()
            )));
        }
        let mut w = Weight::zero(self.algebra);
        for (&j, k) in self.black.iter().zip(coeffs) {
            if !k.is_zero() {
                w = &w + &self.roots.fundamental_weight(j).scale(k);
            }
        }
        Ok(w)
    }

    pub fn integer_combination(&self, coeffs: &[i64]) -> Result<Weight> {
        let q: Vec<Q> = coeffs.iter().map(|&k| int(k)).collect();
        self.combination(&q)
    }

    fn orthogonal_to_white(&self, xi: &Weight) -> bool {
        (1..=self.rank())
            .filter(|&j| !self.is_black(j))
            .all(|j| xi.dot(self.roots.simple_root(j)).is_zero())
    }

    /// Dual characterization of the T-Weyl chamber: orthogonal to every white
    /// simple root and strictly positive on every black one.
    pub fn chamber_contains(&self, xi: &Weight) -> bool {
        xi.algebra() == self.algebra
            && self.orthogonal_to_white(xi)
            && self
                .black
                .iter()
                .all(|&j| xi.dot(self.roots.simple_root(j)).is_positive())
    }

    /// `α ↦ 2⟨α, xi⟩/⟨α, α⟩` over `R_𝔪⁺`.
    pub fn kaehler_coefficients(&self, xi: &Weight) -> Result<Vec<(Weight, Q)>> {
        if xi.algebra() != self.algebra {
            return Err(Error::usage(format!(
                "weight of {} on a diagram of {}",
                xi.algebra(),
                self.algebra
            )));
        }
        if !self.orthogonal_to_white(xi) {
            return Err(Error::usage(format!(
                "{self}: form is not orthogonal to the white simple roots"
            )));
        }
        Ok(self
            .r_m_plus()
            .into_iter()
            .map(|alpha| {
                let c = xi.coroot_pairing(&alpha);
                (alpha, c)
            })
            .collect())
    }

    /// Integral coordinates on the black fundamental weights.
    pub fn is_hodge(&self, xi: &Weight) -> bool {
        xi.algebra() == self.algebra
            && self.orthogonal_to_white(xi)
            && self.coordinates(xi).iter().all(|c| c.is_integer())
    }

    /// Every 2^ℓ painting of `algebra`, in lexicographic mask order
    /// (`o` before `*`, node 1 most significant).
    pub fn all(algebra: AlgebraType) -> impl Iterator<Item = PaintedDiagram> {
        let l = algebra.rank();
        (0u64..(1u64 << l)).map(move |bits| {
            let black = (1..=l).filter(|&j| bits >> (l - j) & 1 == 1);
            PaintedDiagram::new(algebra, black).expect("indices in range")
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootspace::positive_roots;

    fn d(text: &str) -> PaintedDiagram {
        PaintedDiagram::parse(text).unwrap()
    }

    #[test]
    fn parse_and_serialize() {
        let p = d("A11:oo*oo*ooooo");
        assert_eq!(p.black(), &[3, 6]);
        assert_eq!(p.to_string(), "A11:oo*oo*ooooo");
        assert_eq!(d("B3:*oo").black(), &[1]);
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert_eq!(
            PaintedDiagram::parse("D2:oo").unwrap_err(),
            Error::parse(1, "D2: rank must be at least 3")
        );
        assert!(matches!(
            PaintedDiagram::parse("E6:oooooo"),
            Err(Error::Parse { offset: 0, .. })
        ));
        assert!(matches!(
            PaintedDiagram::parse("A3:o*x"),
            Err(Error::Parse { offset: 5, .. })
        ));
        assert!(matches!(
            PaintedDiagram::parse("A3:o*"),
            Err(Error::Parse { offset: 5, .. })
        ));
        assert!(matches!(
            PaintedDiagram::parse("A3:o*oo"),
            Err(Error::Parse { offset: 6, .. })
        ));
        assert!(matches!(
            PaintedDiagram::parse("A:o"),
            Err(Error::Parse { offset: 1, .. })
        ));
        assert!(matches!(
            PaintedDiagram::parse("A3"),
            Err(Error::Parse { offset: 2, .. })
        ));
    }

    #[test]
    fn r_m_plus_b3() {
        let p = d("B3:*oo");
        let a = p.algebra();
        let expected: Vec<Weight> = [
            [1, -1, 0],
            [1, 0, -1],
            [1, 1, 0],
            [1, 0, 1],
            [1, 0, 0],
        ]
        .iter()
        .map(|c| Weight::from_ints(a, c).unwrap())
        .collect();
        let got = p.r_m_plus();
        assert_eq!(got.len(), expected.len());
        for e in &expected {
            assert!(got.contains(e), "{e}");
        }
        assert!(d("A2:oo").r_m_plus().is_empty());
        assert_eq!(d("A2:**").r_m_plus().len(), 3);
    }

    #[test]
    fn koszul_examples() {
        assert_eq!(d("A11:oo*oo*ooooo").koszul().unwrap().values(), vec![6, 9]);
        assert_eq!(d("A5:*ooo*").koszul().unwrap().values(), vec![5, 5]);
        assert_eq!(d("A3:***").koszul().unwrap().values(), vec![2, 2, 2]);
        assert_eq!(d("B3:*oo").koszul().unwrap().values(), vec![5]);
        assert_eq!(d("C3:*oo").koszul().unwrap().values(), vec![6]);
        assert_eq!(d("D4:*ooo").koszul().unwrap().values(), vec![6]);
        let sigma = d("B3:*oo").koszul().unwrap().sigma;
        assert_eq!(sigma, Weight::from_ints(sigma.algebra(), &[5, 0, 0]).unwrap());
        assert!(matches!(d("A3:ooo").koszul(), Err(Error::Domain(_))));
    }

    #[test]
    fn rule_matches_sum_on_worked_examples() {
        let p = d("A11:oo*oo*ooooo");
        let rule: Vec<_> = p.koszul_by_rule().into_values().collect();
        assert_eq!(rule, vec![Some(6), Some(9)]);
        let rule = d("D4:ooo*").koszul_by_rule();
        assert_eq!(rule[&4], None);
    }

    #[test]
    fn components_and_strings() {
        let p = d("D5:o*ooo");
        let kinds: Vec<_> = p.white_components().into_iter().map(|c| c.kind).collect();
        assert_eq!(kinds, vec![ComponentKind::AString, ComponentKind::DTail]);
        let p = d("D5:oo*oo");
        let kinds: Vec<_> = p.white_components().into_iter().map(|c| c.kind).collect();
        assert_eq!(
            kinds,
            vec![
                ComponentKind::AString,
                ComponentKind::DForkHalf,
                ComponentKind::DForkHalf
            ]
        );
        let p = d("D5:ooo*o");
        let strings = p.admissible_strings();
        assert_eq!(strings.len(), 1);
        assert_eq!(strings[0].nodes(), &[1, 2, 3, 5]);
        assert_eq!(strings[0].right(), 5);
        let p = d("B4:o*oo");
        assert_eq!(p.admissible_strings().len(), 1);
    }

    #[test]
    fn chamber_and_hodge() {
        let p = d("A5:*ooo*");
        let sigma = p.koszul().unwrap().sigma;
        assert!(p.chamber_contains(&sigma));
        assert!(!p.chamber_contains(&Weight::zero(p.algebra())));
        assert!(!p.chamber_contains(&-&sigma));
        assert!(p.is_hodge(&sigma));
        assert!(!p.is_hodge(&sigma.scale(&crate::rational::frac(1, 2))));
        let pi1 = p.root_system().fundamental_weight(1).scale(&int(3));
        assert!(p.is_hodge(&pi1));
    }

    #[test]
    fn kaehler_coefficients_a1() {
        let p = d("A1:*");
        let sigma = p.koszul().unwrap().sigma;
        assert_eq!(
            sigma,
            p.root_system().fundamental_weight(1).scale(&int(2))
        );
        let coeffs = p.kaehler_coefficients(&sigma).unwrap();
        assert_eq!(coeffs.len(), 1);
        assert_eq!(coeffs[0].1, int(2));
        let zero = p.kaehler_coefficients(&Weight::zero(p.algebra())).unwrap();
        assert!(zero.iter().all(|(_, c)| c.is_zero()));
        let bad = d("A2:*o");
        assert!(bad
            .kaehler_coefficients(&Weight::epsilon(bad.algebra(), 2))
            .is_err());
    }

    #[test]
    fn partition_of_positive_roots() {
        for text in ["B4:o*o*", "D5:oo*oo", "C3:*o*"] {
            let p = d(text);
            let mut all = p.r_m_plus();
            all.extend(p.white_positive_roots());
            assert_eq!(all.len(), positive_roots(p.algebra()).len());
        }
    }

    #[test]
    fn enumeration_order() {
        let a = AlgebraType::new(Family::A, 2).unwrap();
        let masks: Vec<String> = PaintedDiagram::all(a).map(|p| p.mask()).collect();
        assert_eq!(masks, vec!["oo", "o*", "*o", "**"]);
    }
}
