//! Exhaustive scan of integral quadratic substitutions `f(a t^2 + b t + c)`.
//!
//! The composition is reducible exactly when `b^2 - 4ac + 4a alpha` is a
//! square in `K = Q(alpha)`. A modular square filter discards most triples;
//! the survivors are factored over Z.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::IntPoly;
use crate::factorz::{factor_over_z, is_irreducible, ZFactorization};
use crate::numfield::{NumberField, SquareFilter};

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    /// First shell `max(|a|, |b|, |c|)` scanned; earlier shells are skipped.
    pub resume_from_shell: u64,
    /// Primes consulted by the square filter.
    pub filter_primes: usize,
    /// Record elapsed time in the report.
    pub timing: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            resume_from_shell: 1,
            filter_primes: 40,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanHit {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub factorization: ZFactorization,
}

impl ScanHit {
    /// The pair `(b^2 - 4ac, -4a)` at which `A phi_d` is a square, scaled to
    /// the convention of [`rational_point_search`](super::rational_point_search):
    /// coprime for even `d`, unscaled for odd `d`.
    pub fn point(&self, degree: usize) -> (i64, i64) {
        let x = self.b * self.b - 4 * self.a * self.c;
        let y = -4 * self.a;
        if degree.is_multiple_of(2) {
            let g = x.gcd(&y);
            (x / g, y / g)
        } else {
            (x, y)
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanStats {
    pub candidates: u64,
    /// Rejected by the square filter.
    pub filtered: u64,
    /// Passed the filter and were factored.
    pub factored: u64,
    pub hits: u64,
    /// Survivors whose factorization exceeded its budget.
    pub unknowns: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub f: IntPoly,
    pub height: u64,
    pub first_shell: u64,
    pub stats: ScanStats,
    pub hits: Vec<ScanHit>,
    /// Triples left undecided, for manual review.
    pub unknown: Vec<(i64, i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

/// Canonical triples of one shell: `a != 0`, `b >= 0` (the substitution
/// `t -> -t` flips the sign of `b`), ordered by `a`, `b`, `c`.
fn shell(s: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for a in -s..=s {
        if a == 0 {
            continue;
        }
        for b in 0..=s {
            for c in -s..=s {
                if a.abs().max(b).max(c.abs()) == s {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

enum Outcome {
    Filtered,
    Irreducible,
    Hit(ZFactorization),
    Unknown,
}

fn examine(f: &IntPoly, filter: &SquareFilter, (a, b, c): (i64, i64, i64)) -> Result<Outcome> {
    let disc = BigInt::from(b) * b - BigInt::from(4) * a * c;
    if !filter.passes_linear(&disc, &BigInt::from(4 * a)) {
        return Ok(Outcome::Filtered);
    }
    let g = IntPoly::from_i64(&[c, b, a]);
    match factor_over_z(&f.compose(&g)) {
        Ok(z) if z.count() > 1 => Ok(Outcome::Hit(z)),
        Ok(_) => Ok(Outcome::Irreducible),
        Err(Error::RecombinationLimit(_)) => Ok(Outcome::Unknown),
        Err(e) => Err(e),
    }
}

pub fn quadratic_substitution_scan(f: &IntPoly, height: u64, opts: &ScanOptions) -> Result<ScanReport> {
    if f.deg() < 2 {
        return Err(Error::DegreeTooSmall {
            needed: 2,
            got: f.deg(),
        });
    }
    if !is_irreducible(f) {
        return Err(Error::NotIrreducible);
    }
    let start = Instant::now();
    let field = NumberField::new(f)?;
    let filter = SquareFilter::new(&field, opts.filter_primes);
    let mut stats = ScanStats::default();
    let mut hits = Vec::new();
    let mut unknown = Vec::new();
    let first = opts.resume_from_shell.max(1);
    for s in first..=height {
        let triples = shell(s as i64);
        let outcomes: Vec<Outcome> = triples
            .par_iter()
            .map(|&t| examine(f, &filter, t))
            .collect::<Result<_>>()?;
        for (t, o) in triples.into_iter().zip(outcomes) {
            stats.candidates += 1;
            match o {
                Outcome::Filtered => stats.filtered += 1,
                Outcome::Irreducible => stats.factored += 1,
                Outcome::Hit(z) => {
                    stats.factored += 1;
                    stats.hits += 1;
                    hits.push(ScanHit {
                        a: t.0,
                        b: t.1,
                        c: t.2,
                        factorization: z,
                    });
                }
                Outcome::Unknown => {
                    stats.unknowns += 1;
                    unknown.push(t);
                }
            }
        }
    }
    Ok(ScanReport {
        f: f.clone(),
        height,
        first_shell: first,
        stats,
        hits,
        unknown,
        wall_time_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_int_poly;

    fn p(s: &str) -> IntPoly {
        parse_int_poly(s).unwrap()
    }

    #[test]
    fn sophie_germain_hit() {
        let r = quadratic_substitution_scan(&p("t^2+4"), 1, &ScanOptions::default()).unwrap();
        let hit = r.hits.iter().find(|h| (h.a, h.b, h.c) == (1, 0, 0)).expect("t^4 + 4");
        assert_eq!(hit.factorization.product(), p("t^4+4"));
        assert_eq!(hit.factorization.count(), 2);
    }

    #[test]
    fn cube_root_two_hit() {
        let r = quadratic_substitution_scan(&p("t^3-2"), 2, &ScanOptions::default()).unwrap();
        let hit = r.hits.iter().find(|h| (h.a, h.b, h.c) == (2, 0, 0)).expect("8t^6 - 2");
        assert_eq!(hit.factorization.product(), p("8*t^6-2"));
        for h in &r.hits {
            let g = IntPoly::from_i64(&[h.c, h.b, h.a]);
            assert_eq!(h.factorization.product(), p("t^3-2").compose(&g));
        }
    }

    #[test]
    fn hits_give_rational_points() {
        for (f, h) in [("t^2+4", 1), ("t^3-2", 2)] {
            let f = p(f);
            let r = quadratic_substitution_scan(&f, h, &ScanOptions::default()).unwrap();
            assert!(!r.hits.is_empty());
            for hit in &r.hits {
                let (x, y) = hit.point(f.deg());
                let height = x.unsigned_abs().max(y.unsigned_abs());
                let pts = super::super::rational_point_search(&f, height).unwrap();
                assert!(pts.iter().any(|q| q.x == x.into() && q.y == y.into()), "{hit:?}");
            }
        }
    }

    #[test]
    fn shells_partition_the_box() {
        let total: usize = (1..=3).map(|s| shell(s).len()).sum();
        // a in [-3,3] \ {0}, b in [0,3], c in [-3,3]
        assert_eq!(total, 6 * 4 * 7);
        let resumed = quadratic_substitution_scan(
            &p("t^2+4"),
            3,
            &ScanOptions {
                resume_from_shell: 2,
                ..ScanOptions::default()
            },
        )
        .unwrap();
        assert_eq!(resumed.stats.candidates as usize, shell(2).len() + shell(3).len());
    }

    #[test]
    fn filter_agrees_with_factoring_on_small_box() {
        // every triple factored directly must agree with filter + factoring
        let f = p("t^2+4");
        let r = quadratic_substitution_scan(&f, 3, &ScanOptions::default()).unwrap();
        let mut direct = Vec::new();
        for s in 1..=3 {
            for (a, b, c) in shell(s) {
                let z = factor_over_z(&f.compose(&IntPoly::from_i64(&[c, b, a]))).unwrap();
                if z.count() > 1 {
                    direct.push((a, b, c));
                }
            }
        }
        let got: Vec<_> = r.hits.iter().map(|h| (h.a, h.b, h.c)).collect();
        assert_eq!(got, direct);
    }
}
