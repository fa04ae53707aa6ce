//! Exact rational weight functions summing to one.
//!
//! Weights are stored as integer numerators over a common denominator, so the
//! mass of any vertex set is an integer sum and comparisons against a threshold
//! `p/q` are exact cross-multiplications. Because the numerators sum to the
//! denominator, partial sums never exceed it; when the denominator fits in a
//! `u64` a machine-word mirror is kept for the hot paths.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub type Rational = BigRational;

/// Balance threshold `c = p/q` with `1/2 <= c < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Threshold {
    p: u64,
    q: u64,
}

impl Threshold {
    pub const HALF: Threshold = Threshold { p: 1, q: 2 };

    pub fn new(p: u64, q: u64) -> Result<Self> {
        if q == 0 || 2 * (p as u128) < q as u128 || p >= q {
            return Err(Error::BadParams(format!(
                "threshold {p}/{q} outside [1/2, 1)"
            )));
        }
        let g = p.gcd(&q);
        Ok(Threshold { p: p / g, q: q / g })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let (p, q) = s
            .split_once('/')
            .ok_or_else(|| Error::BadParams(format!("threshold {s:?} is not p/q")))?;
        let p = p
            .trim()
            .parse()
            .map_err(|_| Error::BadParams(format!("bad numerator in {s:?}")))?;
        let q = q
            .trim()
            .parse()
            .map_err(|_| Error::BadParams(format!("bad denominator in {s:?}")))?;
        Threshold::new(p, q)
    }

    pub fn as_rational(&self) -> Rational {
        Rational::new(self.p.into(), self.q.into())
    }
}

impl std::fmt::Display for Threshold {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFunction {
    num: Vec<BigUint>,
    den: BigUint,
    fast: Option<(Vec<u64>, u64)>,
}

impl WeightFunction {
    /// Normalizes nonnegative integer masses to a weight function. At least one
    /// mass must be positive.
    pub fn from_masses(masses: Vec<BigUint>) -> Result<Self> {
        let den: BigUint = masses.iter().sum();
        if den.is_zero() {
            return Err(Error::Weight("total mass is zero".into()));
        }
        Ok(Self::reduced(masses, den))
    }

    pub fn from_u64_masses(masses: &[u64]) -> Result<Self> {
        Self::from_masses(masses.iter().map(|&m| BigUint::from(m)).collect())
    }

    /// Weight function from explicit rationals, which must be nonnegative and sum to one.
    pub fn from_rationals(values: &[Rational]) -> Result<Self> {
        if let Some((v, _)) = values.iter().enumerate().find(|(_, x)| x.is_negative()) {
            return Err(Error::Weight(format!(
                "negative weight on vertex {}",
                v + 1
            )));
        }
        let total: Rational = values.iter().sum();
        if total != Rational::one() {
            return Err(Error::Weight(format!("weights sum to {total}, not 1")));
        }
        let den = values
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let num = values
            .iter()
            .map(|x| {
                (x.numer() * (&den / x.denom()))
                    .to_biguint()
                    .expect("nonnegative")
            })
            .collect();
        Ok(Self::reduced(num, den.to_biguint().expect("positive")))
    }

    fn reduced(mut num: Vec<BigUint>, mut den: BigUint) -> Self {
        let g = num.iter().fold(den.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            num.iter_mut().for_each(|x| *x /= &g);
            den /= &g;
        }
        let fast = den.to_u64().map(|d| {
            (
                num.iter()
                    .map(|x| x.to_u64().expect("numerator below denominator"))
                    .collect(),
                d,
            )
        });
        WeightFunction { num, den, fast }
    }

    pub fn uniform(n: usize) -> Self {
        Self::from_u64_masses(&vec![1; n]).expect("n > 0")
    }

    /// Uniform on `s`, zero elsewhere.
    pub fn uniform_on(n: usize, s: &VertexSet) -> Result<Self> {
        let masses: Vec<u64> = (0..n).map(|v| u64::from(s.contains(v))).collect();
        Self::from_u64_masses(&masses)
    }

    /// All weight on vertex `v`.
    pub fn point(n: usize, v: usize) -> Self {
        let masses: Vec<u64> = (0..n).map(|u| u64::from(u == v)).collect();
        Self::from_u64_masses(&masses).expect("one positive mass")
    }

    pub fn len(&self) -> usize {
        self.num.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty()
    }

    pub fn get(&self, v: usize) -> Rational {
        Rational::new(self.num[v].clone().into(), self.den.clone().into())
    }

    pub fn values(&self) -> Vec<Rational> {
        (0..self.len()).map(|v| self.get(v)).collect()
    }

    pub(crate) fn numerator(&self, v: usize) -> &BigUint {
        &self.num[v]
    }

    pub(crate) fn mass_numerator(&self, s: &VertexSet) -> BigUint {
        match &self.fast {
            Some((num, _)) => BigUint::from(s.iter().map(|v| num[v]).sum::<u64>()),
            None => s.iter().map(|v| &self.num[v]).sum(),
        }
    }

    pub fn mass(&self, s: &VertexSet) -> Rational {
        Rational::new(self.mass_numerator(s).into(), self.den.clone().into())
    }

    pub fn total(&self) -> Rational {
        self.mass(&VertexSet::full(self.len()))
    }

    pub fn is_zero_on(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.num[v].is_zero())
    }

    /// Whether `w(s) > c`.
    pub fn exceeds(&self, s: &VertexSet, c: Threshold) -> bool {
        match &self.fast {
            Some((num, den)) => {
                let m: u64 = s.iter().map(|v| num[v]).sum();
                (m as u128) * (c.q as u128) > (c.p as u128) * (*den as u128)
            }
            None => {
                let m: BigUint = s.iter().map(|v| &self.num[v]).sum();
                m * c.q > &self.den * c.p
            }
        }
    }

    /// Whether `w(a) > w(b)`.
    pub fn heavier(&self, a: &VertexSet, b: &VertexSet) -> bool {
        match &self.fast {
            Some((num, _)) => {
                a.iter().map(|v| num[v]).sum::<u64>() > b.iter().map(|v| num[v]).sum::<u64>()
            }
            None => self.mass_numerator(a) > self.mass_numerator(b),
        }
    }

    /// The first component of `G[rest]` whose weight exceeds `c`; there is at most one.
    pub fn heavy_component(&self, g: &Graph, rest: &VertexSet, c: Threshold) -> Option<VertexSet> {
        g.components(rest).into_iter().find(|d| self.exceeds(d, c))
    }

    /// Whether removing `x` leaves only components of weight at most `c`.
    pub fn balances(&self, g: &Graph, x: &VertexSet, c: Threshold) -> bool {
        self.heavy_component(g, &g.all().difference(x), c).is_none()
    }

    /// Weight function on `G[s]` (ids relabelled by `map`) obtained by moving
    /// the mass outside `s` onto vertex `sink` of `s`.
    pub fn lumped(&self, map: &[usize], sink: usize) -> Self {
        let inside = VertexSet::from_iter(self.len(), map.iter().copied());
        let outside = VertexSet::full(self.len()).difference(&inside);
        let extra = self.mass_numerator(&outside);
        let mut masses: Vec<BigUint> = map.iter().map(|&v| self.num[v].clone()).collect();
        masses[sink] += extra;
        Self::reduced(masses, self.den.clone())
    }

    /// Weights restricted to `map` and renormalized. Fails when the restriction has no mass.
    pub fn restricted(&self, map: &[usize]) -> Result<Self> {
        Self::from_masses(map.iter().map(|&v| self.num[v].clone()).collect())
    }
}

/// Formats a rational as `p/q` (or `p` when integral).
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}
