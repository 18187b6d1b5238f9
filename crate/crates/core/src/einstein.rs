//! Existence of invariant Kähler–Einstein metrics on admissible bundles.
//!
//! Every verdict is an exact comparison between the character coefficients
//! `k_j` and the Koszul numbers `n_j` of the singular orbit `S_0`.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::bundle::{flag_f, kappa_z0_form, AdmissibleData, End};
use crate::error::{Error, Result};
use crate::rational::{self, int, Q};
use crate::rootspace::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LambdaSign {
    Zero,
    Positive,
    Negative,
}

impl LambdaSign {
    pub fn of(lambda: &Q) -> LambdaSign {
        if lambda.is_zero() {
            LambdaSign::Zero
        } else if lambda.is_positive() {
            LambdaSign::Positive
        } else {
            LambdaSign::Negative
        }
    }
}

impl fmt::Display for LambdaSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LambdaSign::Zero => "lambda=0",
            LambdaSign::Positive => "lambda>0",
            LambdaSign::Negative => "lambda<0",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Less,
    #[serde(rename = ">")]
    Greater,
}

/// Strict bound `k_node <relation> value` on one character coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub node: usize,
    pub relation: Relation,
    #[serde(serialize_with = "rational::serde_q::serialize")]
    pub value: Q,
}

impl Bound {
    pub fn holds(&self, k: i64) -> bool {
        let k = int(k);
        match self.relation {
            Relation::Less => k < self.value,
            Relation::Greater => k > self.value,
        }
    }

    /// Integer of smallest magnitude satisfying the bound (positive on ties).
    pub fn smallest_witness(&self) -> i64 {
        let floor = self.value.floor().to_integer();
        let ceil = self.value.ceil().to_integer();
        let pick = match self.relation {
            Relation::Less if self.value.is_positive() => 0.into(),
            Relation::Less => {
                if self.value.is_integer() {
                    floor - 1
                } else {
                    floor
                }
            }
            Relation::Greater if self.value.is_negative() => 0.into(),
            Relation::Greater => {
                if self.value.is_integer() {
                    ceil + 1
                } else {
                    ceil
                }
            }
        };
        i64::try_from(pick).expect("bounds are small")
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.relation {
            Relation::Less => "<",
            Relation::Greater => ">",
        };
        write!(f, "k{} {op} {}", self.node, rational::format(&self.value))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroVerdict {
    pub exists: bool,
    /// The only character admitting a Ricci-flat metric, when `m | n_j` for all `j`.
    pub required_chi: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignVerdict {
    pub exists: bool,
    /// All bounds must hold simultaneously.
    pub constraint: Vec<Bound>,
    /// The metric extends to a complete one (only possible for `λ < 0`).
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EinsteinVerdict {
    pub m: usize,
    /// Koszul numbers of `S_0` in black-node order.
    pub koszul: Vec<i64>,
    pub lambda_zero: ZeroVerdict,
    pub lambda_pos: SignVerdict,
    pub lambda_neg: SignVerdict,
    /// `λ ξ_{Z_0} = Σ n_j π_j ∓ m χ`, exact.
    pub xi_z0_times_lambda: Weight,
    /// `⟨β_j, ξ_0⟩ > 0` for every black `β_j` of `S_0`.
    pub ray_extends: bool,
}

impl EinsteinVerdict {
    pub fn admits(&self, sign: LambdaSign) -> bool {
        match sign {
            LambdaSign::Zero => self.lambda_zero.exists,
            LambdaSign::Positive => self.lambda_pos.exists,
            LambdaSign::Negative => self.lambda_neg.exists,
        }
    }
}

/// Orientation factor: `+1` for line bundles and left ends, `−1` for right ends.
fn orientation(data: &AdmissibleData) -> i64 {
    match data.end() {
        Some(End::Right) => -1,
        _ => 1,
    }
}

/// Coordinates of `λ ξ_{Z_0}` on the black fundamental weights of `S_0`:
/// `n_j − ε m k_j` with `ε` the orientation.
fn z0_coordinates(data: &AdmissibleData, n: &[i64]) -> Vec<i64> {
    let m = data.m() as i64;
    let eps = orientation(data);
    n.iter()
        .zip(data.chi())
        .map(|(&nj, &kj)| nj - eps * m * kj)
        .collect()
}

fn koszul_values(data: &AdmissibleData) -> Result<Vec<i64>> {
    Ok(data.s0().koszul_numbers()?.into_values().collect())
}

/// Decides, for each sign of `λ`, whether the bundle carries an invariant
/// Kähler–Einstein metric near the singular orbit.
///
/// With `ε = +1` (left end, or `m = 1`) and `ε = −1` (right end), `λ > 0`
/// holds iff `ε k_j < n_j/m` for all `j`, `λ < 0` iff `ε k_j > n_j/m`, and
/// `λ = 0` iff `ε k_j = n_j/m`. For `m = 1` these read `k_j < n_j`,
/// `k_j > n_j`, `k_j = n_j`.
pub fn classify(data: &AdmissibleData) -> Result<EinsteinVerdict> {
    let n = koszul_values(data)?;
    let m = data.m() as i64;
    let eps = orientation(data);
    let black = data.s0().black();
    let bounds = |relation_pos: bool| -> Vec<Bound> {
        black
            .iter()
            .zip(&n)
            .map(|(&node, &nj)| {
                let value = Q::new((eps * nj).into(), m.into());
                // ε k_j < n_j/m  ⇔  k_j < εn_j/m for ε = 1, k_j > εn_j/m for ε = −1.
                let less = relation_pos == (eps == 1);
                Bound {
                    node,
                    relation: if less { Relation::Less } else { Relation::Greater },
                    value,
                }
            })
            .collect()
    };
    let pos = bounds(true);
    let neg = bounds(false);
    let satisfied = |bs: &[Bound]| bs.iter().zip(data.chi()).all(|(b, &k)| b.holds(k));

    let required_chi = n
        .iter()
        .all(|nj| nj % m == 0)
        .then(|| n.iter().map(|nj| eps * nj / m).collect::<Vec<i64>>());
    let zero_exists = required_chi.as_deref() == Some(data.chi());

    let ray = ray_condition(data)?;
    let pos_exists = satisfied(&pos);
    let neg_exists = satisfied(&neg);
    let sigma_s = data
        .s0()
        .integer_combination(&n)
        .expect("one Koszul number per black node");
    let chi = data.chi_weight();
    let xi_z0_times_lambda = &sigma_s - &chi.scale(&int(eps * m));
    Ok(EinsteinVerdict {
        m: data.m(),
        koszul: n,
        lambda_zero: ZeroVerdict {
            exists: zero_exists,
            required_chi,
        },
        lambda_pos: SignVerdict {
            exists: pos_exists,
            constraint: pos,
            complete: false,
        },
        lambda_neg: SignVerdict {
            exists: neg_exists,
            constraint: neg,
            complete: neg_exists && ray,
        },
        xi_z0_times_lambda,
        ray_extends: ray,
    })
}

fn ray_condition(data: &AdmissibleData) -> Result<bool> {
    let xi0 = match kappa_z0_form(data) {
        Ok(xi) => xi,
        // A trivial line bundle has no fibre circle, hence no ray.
        Err(Error::Domain(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    let rs = data.s0().root_system();
    Ok(data
        .s0()
        .black()
        .iter()
        .all(|&j| xi0.dot(rs.simple_root(j)).is_positive()))
}

/// Whether the admissible segment extends to a ray `Z_0 + ℝ⁺Z^0` inside the
/// T-Weyl chamber of `F`. Always true for `λ = 0`, where `ξ_0` is a positive
/// multiple of the Koszul form.
pub fn ray_extends(data: &AdmissibleData, sign: LambdaSign) -> Result<bool> {
    match sign {
        LambdaSign::Zero => Ok(true),
        _ => ray_condition(data),
    }
}

/// `ξ_{Z_0} = (Σ n_j π_j ∓ m χ)/λ`, the unique center point for `λ ≠ 0`.
pub fn z0_form(data: &AdmissibleData, lambda: &Q) -> Result<Weight> {
    let sign = LambdaSign::of(lambda);
    if sign == LambdaSign::Zero {
        return Err(Error::usage(
            "for lambda = 0 the center is any face point; use ricci_flat_witness",
        ));
    }
    let n = koszul_values(data)?;
    let coords = z0_coordinates(data, &n);
    // Conditions β_j(Z_0) > 0: every coordinate of λξ has the sign of λ.
    let admitted = coords.iter().all(|&c| match sign {
        LambdaSign::Positive => c > 0,
        _ => c < 0,
    });
    if !admitted {
        return Err(Error::domain(format!("{data}: {sign} is not admitted")));
    }
    let scaled: Vec<Q> = coords.iter().map(|&c| int(c) / lambda).collect();
    data.s0().combination(&scaled)
}

/// Default Ricci-flat center `ξ_{Z_0} = Σ_{black j} π_j`.
pub fn ricci_flat_witness(data: &AdmissibleData) -> Result<Weight> {
    let verdict = classify(data)?;
    if !verdict.lambda_zero.exists {
        return Err(Error::domain(format!("{data}: lambda=0 is not admitted")));
    }
    let ones = vec![1; data.s0().black().len()];
    data.s0().integer_combination(&ones)
}

/// Whether `xi` lies on the open face `{⟨β, ξ⟩ = 0, ⟨β_j, ξ⟩ > 0}` of the
/// chamber of `F` (zero on every other simple root).
pub fn is_face_point(data: &AdmissibleData, xi: &Weight) -> bool {
    let s0 = data.s0();
    if xi.algebra() != s0.algebra() {
        return false;
    }
    let rs = s0.root_system();
    (1..=s0.rank()).all(|j| {
        let v = xi.dot(rs.simple_root(j));
        if s0.is_black(j) {
            v.is_positive()
        } else {
            v.is_zero()
        }
    })
}

/// `σ_F = λ ξ_{Z_0} + m ξ_0` for the given center.
pub fn alg_cond(data: &AdmissibleData, lambda: &Q, xi_z0: &Weight) -> Result<bool> {
    let sigma_f = flag_f(data).koszul()?.sigma;
    let xi0 = kappa_z0_form(data)?;
    let rhs = &xi_z0.scale(lambda) + &xi0.scale(&int(data.m() as i64));
    Ok(sigma_f == rhs)
}

/// Coordinates of `λ ξ_{Z_0}` on the black fundamental weights.
pub fn center_coordinates(data: &AdmissibleData) -> Result<Vec<i64>> {
    let n = koszul_values(data)?;
    Ok(z0_coordinates(data, &n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::painted::PaintedDiagram;
    use crate::rational::frac;

    fn d(text: &str) -> PaintedDiagram {
        PaintedDiagram::parse(text).unwrap()
    }

    fn a11(start: usize, end: End, chi: Vec<i64>) -> AdmissibleData {
        AdmissibleData::new(d("A11:oo*oo*ooooo"), start, end, chi).unwrap()
    }

    #[test]
    fn worked_examples() {
        let v = classify(&a11(1, End::Left, vec![2, 3])).unwrap();
        assert!(v.lambda_zero.exists);
        assert_eq!(v.lambda_zero.required_chi, Some(vec![2, 3]));
        assert!(v.ray_extends);

        let v = classify(&a11(7, End::Left, vec![2, 3])).unwrap();
        assert_eq!(v.m, 6);
        assert!(!v.lambda_zero.exists);
        assert_eq!(v.lambda_zero.required_chi, None);

        let data = AdmissibleData::new(d("A5:*ooo*"), 2, End::Left, vec![1, 1]).unwrap();
        let v = classify(&data).unwrap();
        assert_eq!(v.m, 4);
        assert!(!v.lambda_zero.exists);
        assert_eq!(v.lambda_zero.required_chi, None);

        for text in ["A1:o", "A3:ooo", "A2:oo"] {
            let p = d(text);
            let data = AdmissibleData::new(p, 1, End::Left, vec![]).unwrap();
            let v = classify(&data).unwrap();
            assert!(v.lambda_zero.exists && v.lambda_pos.exists && v.lambda_neg.exists);
        }
    }

    #[test]
    fn positive_sign_inequalities() {
        let v = classify(&a11(1, End::Left, vec![1, 1])).unwrap();
        assert!(v.lambda_pos.exists);
        assert!(!v.lambda_neg.exists);
        assert_eq!(v.lambda_pos.constraint[0].to_string(), "k3 < 2");
        assert_eq!(v.lambda_pos.constraint[1].to_string(), "k6 < 3");
    }

    #[test]
    fn z0_worked_value() {
        let data = a11(1, End::Left, vec![1, 1]);
        let xi = z0_form(&data, &int(1)).unwrap();
        let expected = data.s0().integer_combination(&[3, 6]).unwrap();
        assert_eq!(xi, expected);
        assert!(alg_cond(&data, &int(1), &xi).unwrap());
        assert!(is_face_point(&data, &xi));
        assert!(matches!(z0_form(&data, &int(-1)), Err(Error::Domain(_))));
        assert!(matches!(z0_form(&data, &int(0)), Err(Error::Usage(_))));
    }

    #[test]
    fn ricci_flat_witness_is_face_point() {
        let data = a11(1, End::Left, vec![2, 3]);
        let w = ricci_flat_witness(&data).unwrap();
        assert!(is_face_point(&data, &w));
        assert!(alg_cond(&data, &int(0), &w).unwrap());
        assert!(ray_extends(&data, LambdaSign::Zero).unwrap());
    }

    #[test]
    fn ray_conditions() {
        let data = a11(1, End::Left, vec![3, 4]);
        let v = classify(&data).unwrap();
        assert!(v.lambda_neg.exists && v.lambda_neg.complete);
        assert!(ray_extends(&data, LambdaSign::Negative).unwrap());
        let data = a11(1, End::Left, vec![0, 1]);
        assert!(classify(&data).unwrap().lambda_pos.exists);
        assert!(!ray_extends(&data, LambdaSign::Positive).unwrap());
    }

    #[test]
    fn line_bundle_signs() {
        // n = 5 for B3:*oo; λ > 0 requires k < n, λ < 0 requires k > n.
        let p = d("B3:*oo");
        let below = AdmissibleData::line(p.clone(), vec![2]).unwrap();
        let v = classify(&below).unwrap();
        assert!(v.lambda_pos.exists && !v.lambda_neg.exists);
        let xi = z0_form(&below, &int(1)).unwrap();
        assert!(is_face_point(&below, &xi));
        assert!(alg_cond(&below, &int(1), &xi).unwrap());
        let above = AdmissibleData::line(p.clone(), vec![7]).unwrap();
        assert!(classify(&above).unwrap().lambda_neg.exists);
        let exact = AdmissibleData::line(p, vec![5]).unwrap();
        assert!(classify(&exact).unwrap().lambda_zero.exists);
    }

    #[test]
    fn smallest_witnesses() {
        let b = |relation, v: Q| Bound {
            node: 1,
            relation,
            value: v,
        };
        assert_eq!(b(Relation::Less, frac(3, 2)).smallest_witness(), 0);
        assert_eq!(b(Relation::Less, int(0)).smallest_witness(), -1);
        assert_eq!(b(Relation::Less, frac(-3, 2)).smallest_witness(), -2);
        assert_eq!(b(Relation::Greater, frac(-1, 2)).smallest_witness(), 0);
        assert_eq!(b(Relation::Greater, int(2)).smallest_witness(), 3);
        assert_eq!(b(Relation::Greater, frac(5, 3)).smallest_witness(), 2);
    }
}
