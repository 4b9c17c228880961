use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{require_degree, require_dg_lie, step_cap, GaugeError};
use crate::exactlin::{inv_factorial, Rational, Vector};
use crate::linf::LInftyAlgebra;

/// Baker–Campbell–Hausdorff product through the Dynkin series
/// `Σ_n (−1)^{n−1}/n Σ [x^{r_1} y^{s_1} ⋯ x^{r_n} y^{s_n}] / ((Σ r_i + s_i) Π r_i! s_i!)`,
/// where `[a_1 ⋯ a_m] = [a_1, [a_2, …, [a_{m−1}, a_m]…]]`.
///
/// Terms are summed by word length until every right-nested word of that length vanishes.
pub fn bch(g: &LInftyAlgebra, x: &Vector, y: &Vector) -> Result<Vector, GaugeError> {
    require_dg_lie(g)?;
    require_degree(g, x, 0)?;
    require_degree(g, y, 0)?;
    let letters = [x, y];
    // nested[w] for words w of the current length, letters encoded as 0 (x) / 1 (y)
    let mut nested: HashMap<Vec<u8>, Vector> = HashMap::new();
    nested.insert(vec![0], x.clone());
    nested.insert(vec![1], y.clone());
    let mut out = Vector::zero();
    let cap = step_cap(g);
    for m in 1..=cap {
        if nested.values().all(Vector::is_zero) {
            return Ok(out);
        }
        for (word, value) in &nested {
            if value.is_zero() {
                continue;
            }
            let c = dynkin_coefficient(word);
            if !c.is_zero() {
                out.add_scaled(&c, value);
            }
        }
        // extend on the left: [a, w]
        let mut next = HashMap::with_capacity(nested.len() * 2);
        for (word, value) in &nested {
            for (l, letter) in letters.iter().enumerate() {
                let v = if value.is_zero() {
                    Vector::zero()
                } else {
                    g.eval_unchecked(&[letter, value])
                };
                let mut w = Vec::with_capacity(m + 1);
                w.push(l as u8);
                w.extend_from_slice(word);
                next.insert(w, v);
            }
        }
        nested = next;
    }
    Err(GaugeError::NotNilpotent {
        what: "BCH series".into(),
        steps: cap,
    })
}

/// Total Dynkin coefficient of a word: sum over its factorizations into blocks
/// `x^{r} y^{s}` with `r + s > 0`.
fn dynkin_coefficient(word: &[u8]) -> Rational {
    let m = word.len();
    // dp[i][n] = Σ over factorizations of word[..i] into n blocks of Π 1/(r!s!)
    let mut dp = vec![vec![Rational::zero(); m + 1]; m + 1];
    dp[0][0] = Rational::one();
    for i in 0..m {
        for n in 0..=i {
            if dp[i][n].is_zero() {
                continue;
            }
            let base = dp[i][n].clone();
            // block word[i..j] must be of the form x^r y^s
            let mut r = 0;
            let mut s = 0;
            for j in i..m {
                if word[j] == 0 {
                    if s > 0 {
                        break;
                    }
                    r += 1;
                } else {
                    s += 1;
                }
                let w = &base * inv_factorial(r) * inv_factorial(s);
                dp[j + 1][n + 1] += w;
            }
        }
    }
    let mut total = Rational::zero();
    for n in 1..=m {
        if dp[m][n].is_zero() {
            continue;
        }
        let sign = if n % 2 == 1 { Rational::one() } else { -Rational::one() };
        total += sign * &dp[m][n] / Rational::from_integer(BigInt::from(n));
    }
    total / Rational::from_integer(BigInt::from(m))
}
