//! Admissible bundle data `(A_{m−1}, χ, β)` and the geometry of the fibre circle.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::painted::{PaintedDiagram, WhiteString};
use crate::rational::{int, to_f64, Q};
use crate::rootspace::{Family, Weight};

/// Which end of the white string is painted black to obtain `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Left,
    Right,
}

impl End {
    pub fn parse(text: &str) -> Result<End> {
        match text {
            "left" => Ok(End::Left),
            "right" => Ok(End::Right),
            other => Err(Error::parse(
                0,
                format!("expected `left` or `right`, got `{other}`"),
            )),
        }
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            End::Left => "left",
            End::Right => "right",
        })
    }
}

/// How the string is attached to the rest of the diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Generic,
    /// B family: the string ends at `α_{ℓ−1}` and `α_ℓ` is black.
    BException,
    /// D family: the string runs through `α_{ℓ−2}` into one fork tip; the
    /// other tip is black.
    DException,
    /// D family: the string ends at `α_{ℓ−2}` and both tips are black.
    DoubleNeighbor,
}

/// Black neighbours of a string: `left` before its first node, `right`
/// after its last (two tips in the double-neighbour shape).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attachment {
    pub left: Option<usize>,
    pub right: Vec<usize>,
    pub shape: Shape,
}

#[derive(Debug, Clone)]
pub struct AdmissibleData {
    s0: PaintedDiagram,
    fibre: Option<(WhiteString, End)>,
    chi: Vec<i64>,
    flag: PaintedDiagram,
}

impl AdmissibleData {
    /// Rank-`m` data on the admissible string starting at `string_start`.
    pub fn new(s0: PaintedDiagram, string_start: usize, end: End, chi: Vec<i64>) -> Result<Self> {
        let string = s0.string_at(string_start)?;
        check_chi(&s0, &chi)?;
        let beta = match end {
            End::Left => string.left(),
            End::Right => string.right(),
        };
        let flag = s0.with_black(beta)?;
        Ok(AdmissibleData {
            s0,
            fibre: Some((string, end)),
            chi,
            flag,
        })
    }

    /// Line bundle (`m = 1`): no string, `F = S_0`.
    pub fn line(s0: PaintedDiagram, chi: Vec<i64>) -> Result<Self> {
        check_chi(&s0, &chi)?;
        Ok(AdmissibleData {
            flag: s0.clone(),
            s0,
            fibre: None,
            chi,
        })
    }

    /// Same diagram, string and end with another character.
    pub fn with_chi(&self, chi: Vec<i64>) -> Result<Self> {
        check_chi(&self.s0, &chi)?;
        Ok(AdmissibleData {
            chi,
            ..self.clone()
        })
    }

    pub fn s0(&self) -> &PaintedDiagram {
        &self.s0
    }

    pub fn string(&self) -> Option<&WhiteString> {
        self.fibre.as_ref().map(|(s, _)| s)
    }

    pub fn end(&self) -> Option<End> {
        self.fibre.as_ref().map(|(_, e)| *e)
    }

    pub fn m(&self) -> usize {
        self.string().map_or(1, |s| s.len() + 1)
    }

    /// Character coefficients `k_j`, in black-node order of `S_0`.
    pub fn chi(&self) -> &[i64] {
        &self.chi
    }

    /// `χ = Σ k_j π_j`.
    pub fn chi_weight(&self) -> Weight {
        self.s0
            .integer_combination(&self.chi)
            .expect("length checked at construction")
    }

    /// The end root `β` painted black in `F`.
    pub fn beta(&self) -> Option<usize> {
        self.fibre.as_ref().map(|(s, e)| match e {
            End::Left => s.left(),
            End::Right => s.right(),
        })
    }

    pub fn attachment(&self) -> Option<Attachment> {
        self.string().map(|s| attachment(&self.s0, s))
    }
}

impl fmt::Display for AdmissibleData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chi: Vec<String> = self.chi.iter().map(|k| k.to_string()).collect();
        match &self.fibre {
            Some((s, e)) => write!(
                f,
                "{} string@{} (m={}) beta={} chi=[{}]",
                self.s0,
                s.start(),
                self.m(),
                e,
                chi.join(",")
            ),
            None => write!(f, "{} m=1 chi=[{}]", self.s0, chi.join(",")),
        }
    }
}

fn check_chi(s0: &PaintedDiagram, chi: &[i64]) -> Result<()> {
    if chi.len() != s0.black().len() {
        return Err(Error::usage(format!(
            "{s0} has {} black nodes but {} character coefficients were given",
            s0.black().len(),
            chi.len()
        )));
    }
    Ok(())
}

fn attachment(s0: &PaintedDiagram, string: &WhiteString) -> Attachment {
    let l = s0.rank();
    let first = string.left();
    let last = string.right();
    let left = (first > 1).then(|| first - 1);
    match s0.algebra().family() {
        Family::A | Family::B | Family::C => {
            let shape = if s0.algebra().family() == Family::B && last == l - 1 {
                Shape::BException
            } else {
                Shape::Generic
            };
            Attachment {
                left,
                right: if last < l { vec![last + 1] } else { vec![] },
                shape,
            }
        }
        Family::D => {
            let has_tip = string.contains(l - 1) || string.contains(l);
            if !has_tip {
                if last == l - 2 {
                    Attachment {
                        left,
                        right: vec![l - 1, l],
                        shape: Shape::DoubleNeighbor,
                    }
                } else {
                    Attachment {
                        left,
                        right: vec![last + 1],
                        shape: Shape::Generic,
                    }
                }
            } else if string.len() == 1 {
                // A lone tip hangs off the black node ℓ−2.
                Attachment {
                    left: Some(l - 2),
                    right: vec![],
                    shape: Shape::Generic,
                }
            } else {
                let other_tip = if string.contains(l) { l - 1 } else { l };
                Attachment {
                    left,
                    right: vec![other_tip],
                    shape: Shape::DException,
                }
            }
        }
    }
}

/// `F`: `S_0` with `β` painted black (`S_0` itself when `m = 1`).
pub fn flag_f(data: &AdmissibleData) -> PaintedDiagram {
    data.flag.clone()
}

fn require_nonzero_chi(data: &AdmissibleData) -> Result<()> {
    if data.m() == 1 && data.chi.iter().all(|&k| k == 0) {
        return Err(Error::domain(format!(
            "{data}: a line bundle with trivial character is degenerate"
        )));
    }
    Ok(())
}

/// Closed form of the dual `ξ_0` of `κZ^0`, sign-normalized so that
/// `⟨β, ξ_0⟩ > 0` (and `ξ_0 = χ` for line bundles).
pub fn kappa_z0_form(data: &AdmissibleData) -> Result<Weight> {
    require_nonzero_chi(data)?;
    let chi = data.chi_weight();
    let Some((string, end)) = &data.fibre else {
        return Ok(chi);
    };
    let rs = data.s0.root_system();
    let att = attachment(&data.s0, string);
    let m = data.m() as i64;
    let pi = |j: usize| rs.fundamental_weight(j);
    let right_sum = att
        .right
        .iter()
        .fold(Weight::zero(data.s0.algebra()), |acc, &j| &acc + pi(j));
    let left_pi = att.left.map(pi);
    let scaled_left = |c: Q| left_pi.map(|w| w.scale(&c));
    let (sign, beta, left_coeff, right_coeff) = match end {
        End::Left => {
            let c = match att.shape {
                Shape::BException | Shape::DException => 2,
                Shape::Generic | Shape::DoubleNeighbor => 1,
            };
            (1, string.left(), Q::new((m - 1).into(), m.into()), Q::new(c.into(), m.into()))
        }
        End::Right => {
            let c = match att.shape {
                Shape::BException => 2 * (m - 1),
                Shape::DException => m - 2,
                Shape::Generic | Shape::DoubleNeighbor => m - 1,
            };
            (-1, string.right(), Q::new(1.into(), m.into()), Q::new(c.into(), m.into()))
        }
    };
    let mut xi = chi.scale(&int(sign)) + pi(beta).clone();
    if let Some(w) = scaled_left(left_coeff) {
        xi = xi - w;
    }
    xi = xi - right_sum.scale(&right_coeff);
    Ok(xi)
}

/// ε-coordinate signed unit vectors `e_1, …, e_m` along the string with
/// `α_{s_j} = e_j − e_{j+1}`.
fn epsilon_chain(data: &AdmissibleData, string: &WhiteString) -> Vec<Weight> {
    let rs = data.s0.root_system();
    let first = rs.simple_root(string.left());
    let i = first
        .coeffs()
        .iter()
        .position(|c| c.is_positive())
        .expect("simple roots have a positive coordinate");
    let mut chain = vec![Weight::epsilon(data.s0.algebra(), i + 1)];
    for &s in string.nodes() {
        let next = chain.last().expect("nonempty") - rs.simple_root(s);
        chain.push(next);
    }
    chain
}

/// Independent ε-coordinate computation of `ξ_0`:
/// `±(χ + w/m)` with `w = (m−1)e_β − Σ_{other} e`, sign fixed by `⟨β, ξ_0⟩ > 0`.
pub fn kappa_z0_oracle(data: &AdmissibleData) -> Result<Weight> {
    require_nonzero_chi(data)?;
    let chi = data.chi_weight();
    let Some((string, end)) = &data.fibre else {
        return Ok(chi);
    };
    let chain = epsilon_chain(data, string);
    let m = chain.len();
    let pick = match end {
        End::Left => 0,
        End::Right => m - 1,
    };
    let mut w = chain[pick].scale(&int(m as i64 - 1));
    for (idx, e) in chain.iter().enumerate() {
        if idx != pick {
            w = &w - e;
        }
    }
    let xi = &chi + &w.scale(&Q::new(1.into(), (m as i64).into()));
    let beta = data.s0.root_system().simple_root(data.beta().expect("m > 1"));
    Ok(if xi.dot(beta).is_negative() { -xi } else { xi })
}

/// `κ² = ⟨ξ_0, ξ_0⟩` exactly, and `κ` as a float.
pub fn kappa(data: &AdmissibleData) -> Result<(Q, f64)> {
    let xi = kappa_z0_form(data)?;
    let sq = xi.dot(&xi);
    let k = to_f64(&sq).sqrt();
    Ok((sq, k))
}

#[derive(Debug, Clone)]
pub struct BundleGeometry {
    pub f_diagram: PaintedDiagram,
    pub xi0: Weight,
    pub kappa_sq: Q,
    pub kappa: f64,
    /// Period `2π/κ` of the circle generated by `Z_0`.
    pub t0: f64,
}

pub fn geometry(data: &AdmissibleData) -> Result<BundleGeometry> {
    let xi0 = kappa_z0_form(data)?;
    let kappa_sq = xi0.dot(&xi0);
    let kappa = to_f64(&kappa_sq).sqrt();
    Ok(BundleGeometry {
        f_diagram: flag_f(data),
        xi0,
        kappa_sq,
        kappa,
        t0: 2.0 * std::f64::consts::PI / kappa,
    })
}

/// Koszul numbers of `F` predicted from those of `S_0`.
pub fn expected_koszul_update(data: &AdmissibleData) -> Result<BTreeMap<usize, i64>> {
    let (string, end) = data.fibre.as_ref().ok_or_else(|| {
        Error::usage(format!("{data}: the Koszul update needs a string (m > 1)"))
    })?;
    let m = data.m() as i64;
    let att = attachment(&data.s0, string);
    let mut n = data.s0.koszul_numbers()?;
    let (left_drop, right_drop) = match end {
        End::Left => (
            m - 1,
            match att.shape {
                Shape::BException | Shape::DException => 2,
                Shape::Generic | Shape::DoubleNeighbor => 1,
            },
        ),
        End::Right => (
            1,
            match att.shape {
                Shape::BException => 2 * (m - 1),
                Shape::DException => m - 2,
                Shape::Generic | Shape::DoubleNeighbor => m - 1,
            },
        ),
    };
    if let Some(l) = att.left {
        *n.get_mut(&l).expect("left neighbour is black") -= left_drop;
    }
    for r in &att.right {
        *n.get_mut(r).expect("right neighbour is black") -= right_drop;
    }
    n.insert(data.beta().expect("m > 1"), m);
    Ok(n)
}

/// Compares the root-sum Koszul numbers of `F` with the update relations.
pub fn koszul_update_check(data: &AdmissibleData) -> Result<bool> {
    let expected = expected_koszul_update(data)?;
    Ok(data.flag.koszul()?.numbers == expected)
}

/// `σ_F − σ_{S_0}` should equal `±w` (the string part of `m ξ_0`).
#[cfg(test)]
pub(crate) fn sigma_jump(data: &AdmissibleData) -> Result<Weight> {
    let f = data.flag.koszul()?.sigma;
    let s = if data.s0.black().is_empty() {
        Weight::zero(data.s0.algebra())
    } else {
        data.s0.koszul()?.sigma
    };
    Ok(f - s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn d(text: &str) -> PaintedDiagram {
        PaintedDiagram::parse(text).unwrap()
    }

    #[test]
    fn flag_examples() {
        let data = AdmissibleData::new(d("A11:oo*oo*ooooo"), 1, End::Left, vec![2, 3]).unwrap();
        assert_eq!(flag_f(&data).black(), &[1, 3, 6]);
        let data = AdmissibleData::new(d("A5:*ooo*"), 2, End::Right, vec![0, 0]).unwrap();
        assert_eq!(flag_f(&data).black(), &[1, 4, 5]);
        let line = AdmissibleData::line(d("A5:*ooo*"), vec![1, 1]).unwrap();
        assert_eq!(flag_f(&line), d("A5:*ooo*"));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            AdmissibleData::new(d("A5:*ooo*"), 3, End::Left, vec![0, 0]),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            AdmissibleData::new(d("A5:*ooo*"), 2, End::Left, vec![0]),
            Err(Error::Usage(_))
        ));
        // Tails are not admissible strings.
        assert!(AdmissibleData::new(d("B3:*oo"), 2, End::Left, vec![0]).is_err());
    }

    #[test]
    fn worked_example_form() {
        let data = AdmissibleData::new(d("A11:oo*oo*ooooo"), 1, End::Left, vec![2, 3]).unwrap();
        let a = data.s0().algebra();
        let mut tail = vec![0i64; 12];
        tail[0] = 2;
        tail[1] = -1;
        tail[2] = -1;
        let w = Weight::from_ints(a, &tail).unwrap().scale(&frac(1, 3));
        let expected = &data.chi_weight() + &w;
        assert_eq!(kappa_z0_form(&data).unwrap(), expected);
        assert_eq!(kappa_z0_oracle(&data).unwrap(), expected);
    }

    #[test]
    fn su2_point_orbit_kappa() {
        let data = AdmissibleData::new(d("A1:o"), 1, End::Left, vec![]).unwrap();
        let xi = kappa_z0_form(&data).unwrap();
        let a = xi.algebra();
        assert_eq!(xi, Weight::from_coeffs(a, vec![frac(1, 2), frac(-1, 2)]).unwrap());
        let (sq, k) = kappa(&data).unwrap();
        assert_eq!(sq, frac(1, 8));
        assert!((k - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn line_bundle_form_is_chi() {
        let data = AdmissibleData::line(d("B3:*oo"), vec![3]).unwrap();
        assert_eq!(kappa_z0_form(&data).unwrap(), data.chi_weight());
        let (sq, _) = kappa(&data).unwrap();
        let pi = data.s0().root_system().fundamental_weight(1).clone();
        assert_eq!(sq, int(9) * pi.dot(&pi));
        let zero = AdmissibleData::line(d("B3:*oo"), vec![0]).unwrap();
        assert!(matches!(kappa_z0_form(&zero), Err(Error::Domain(_))));
    }

    #[test]
    fn b_exception_left_coefficient() {
        // B4 with string {2,3} and α_4 black: ξ_0 = χ + π_2 − (2/3)π_1 − (2/3)π_4.
        let data = AdmissibleData::new(d("B4:*oo*"), 2, End::Left, vec![0, 0]).unwrap();
        assert_eq!(data.attachment().unwrap().shape, Shape::BException);
        let rs = data.s0().root_system();
        let expected = rs.fundamental_weight(2).clone()
            - rs.fundamental_weight(1).scale(&frac(2, 3))
            - rs.fundamental_weight(4).scale(&frac(2, 3));
        let xi = kappa_z0_form(&data).unwrap();
        assert_eq!(xi, expected);
        assert_eq!(kappa_z0_oracle(&data).unwrap(), xi);
    }

    #[test]
    fn right_end_flips_sign() {
        let data = AdmissibleData::new(d("A5:*ooo*"), 2, End::Right, vec![1, -2]).unwrap();
        let form = kappa_z0_form(&data).unwrap();
        assert_eq!(form, kappa_z0_oracle(&data).unwrap());
        let beta = data.s0().root_system().simple_root(4);
        assert!(form.dot(beta).is_positive());
    }

    #[test]
    fn update_examples() {
        let data = AdmissibleData::new(d("A11:oo*oo*ooooo"), 1, End::Left, vec![2, 3]).unwrap();
        let n = flag_f(&data).koszul().unwrap().values();
        assert_eq!(n, vec![3, 5, 9]);
        assert!(koszul_update_check(&data).unwrap());
        let b = AdmissibleData::new(d("B4:*oo*"), 2, End::Left, vec![0, 0]).unwrap();
        assert!(koszul_update_check(&b).unwrap());
        let line = AdmissibleData::line(d("B3:*oo"), vec![1]).unwrap();
        assert!(matches!(koszul_update_check(&line), Err(Error::Usage(_))));
    }

    #[test]
    fn sigma_jump_matches_form() {
        let data = AdmissibleData::new(d("D5:o*oo*"), 3, End::Right, vec![0, 0]).unwrap();
        let m = int(data.m() as i64);
        let jump = sigma_jump(&data).unwrap();
        let xi = kappa_z0_form(&data).unwrap();
        assert_eq!(xi.scale(&m), jump);
    }
}
