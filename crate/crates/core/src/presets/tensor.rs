//! DGLAs of the form `g ⊗ A`, for an ordinary Lie algebra `g` (in degree 0)
//! and a finite graded commutative DGA `A` generated by elements of square
//! zero. The bracket is `[u⊗a, v⊗b] = [u,v] ⊗ ab` and the differential is
//! `id ⊗ d_A`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{rational::sign_of_parity, Rational};
use crate::dgla::StructureConstantDgla;
use crate::error::{Error, Result};

/// Structure constants of an ordinary Lie algebra.
#[derive(Clone, Debug)]
pub struct LieSpec {
    pub basis: Vec<String>,
    /// `[left, right] = Σ coeff · to`; the mirrored entries are implied.
    pub bracket: Vec<(String, String, Vec<(String, Rational)>)>,
}

impl LieSpec {
    pub fn new(basis: &[&str]) -> Self {
        Self {
            basis: basis.iter().map(|s| s.to_string()).collect(),
            bracket: Vec::new(),
        }
    }

    pub fn with(mut self, left: &str, right: &str, terms: &[(&str, Rational)]) -> Self {
        let terms = terms
            .iter()
            .map(|(t, c)| (t.to_string(), c.clone()))
            .collect();
        self.bracket
            .push((left.to_string(), right.to_string(), terms));
        self
    }

    /// Full table as a map over index pairs, with antisymmetric completion.
    fn table(&self) -> Result<BTreeMap<(usize, usize), Vec<(usize, Rational)>>> {
        let index = |id: &str| {
            self.basis
                .iter()
                .position(|b| b == id)
                .ok_or_else(|| Error::UnknownSymbol(id.to_string()))
        };
        let mut out = BTreeMap::new();
        for (l, r, terms) in &self.bracket {
            let (i, j) = (index(l)?, index(r)?);
            let resolved: Vec<(usize, Rational)> = terms
                .iter()
                .map(|(t, c)| Ok((index(t)?, c.clone())))
                .collect::<Result<_>>()?;
            let negated = resolved.iter().map(|(t, c)| (*t, -c.clone())).collect();
            out.insert((i, j), resolved);
            out.insert((j, i), negated);
        }
        Ok(out)
    }
}

/// A generator of the graded algebra. Every generator squares to zero.
#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

/// A finite graded commutative DGA `Λ[g_1, …, g_m] / (g_i²)`.
#[derive(Clone, Debug)]
pub struct GradedAlgebraSpec {
    pub generators: Vec<Generator>,
    /// `d g = Σ coeff · monomial`, monomials given by generator names.
    pub differential: Vec<(String, Vec<(Vec<String>, Rational)>)>,
}

type Monomial = Vec<usize>;
type Poly = BTreeMap<Monomial, Rational>;

fn add_to(p: &mut Poly, m: Monomial, c: Rational) {
    let e = p.entry(m.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&m);
    }
}

impl GradedAlgebraSpec {
    pub fn new(generators: &[(&str, i64)]) -> Self {
        Self {
            generators: generators
                .iter()
                .map(|(n, d)| Generator {
                    name: n.to_string(),
                    degree: *d,
                })
                .collect(),
            differential: Vec::new(),
        }
    }

    pub fn with_differential(mut self, generator: &str, terms: &[(&[&str], Rational)]) -> Self {
        let terms = terms
            .iter()
            .map(|(m, c)| (m.iter().map(|s| s.to_string()).collect(), c.clone()))
            .collect();
        self.differential.push((generator.to_string(), terms));
        self
    }

    fn degree_of(&self, m: &[usize]) -> i64 {
        m.iter().map(|&i| self.generators[i].degree).sum()
    }

    /// All monomials (increasing generator indices), the unit first.
    pub fn monomials(&self) -> Vec<Monomial> {
        let n = self.generators.len();
        let mut all: Vec<Monomial> = (0..1u32 << n)
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
            .collect();
        all.sort_by_key(|m: &Monomial| (m.len(), m.clone()));
        all
    }

    pub fn monomial_name(&self, m: &[usize]) -> String {
        if m.is_empty() {
            "1".to_string()
        } else {
            m.iter()
                .map(|&i| self.generators[i].name.as_str())
                .collect::<Vec<_>>()
                .join("_")
        }
    }

    /// `a · b` with the Koszul sign of sorting the concatenation.
    fn multiply(&self, a: &[usize], b: &[usize]) -> Option<(Monomial, Rational)> {
        if a.iter().any(|i| b.contains(i)) {
            return None;
        }
        let mut parity = 0;
        for &i in a {
            for &j in b {
                if i > j {
                    parity += self.generators[i].degree * self.generators[j].degree;
                }
            }
        }
        let mut m: Monomial = a.iter().chain(b).copied().collect();
        m.sort_unstable();
        Some((m, sign_of_parity(parity)))
    }

    fn multiply_poly(&self, p: &Poly, q: &Poly) -> Poly {
        let mut out = Poly::new();
        for (a, x) in p {
            for (b, y) in q {
                if let Some((m, s)) = self.multiply(a, b) {
                    add_to(&mut out, m, s * x * y);
                }
            }
        }
        out
    }

    fn generator_differentials(&self) -> Result<Vec<Poly>> {
        let index = |id: &str| {
            self.generators
                .iter()
                .position(|g| g.name == id)
                .ok_or_else(|| Error::UnknownSymbol(id.to_string()))
        };
        let mut out = vec![Poly::new(); self.generators.len()];
        for (g, terms) in &self.differential {
            let gi = index(g)?;
            for (names, c) in terms {
                let mut m = names
                    .iter()
                    .map(|n| index(n))
                    .collect::<Result<Monomial>>()?;
                let unsorted = m.clone();
                m.sort_unstable();
                m.dedup();
                if m.len() != unsorted.len() {
                    continue;
                }
                // Reorder through products so the sign is accounted for.
                let mut acc: Poly = BTreeMap::from([(Vec::new(), c.clone())]);
                for i in unsorted {
                    acc = self.multiply_poly(&acc, &BTreeMap::from([(vec![i], Rational::one())]));
                }
                if let Some(bad) = acc
                    .keys()
                    .find(|m| self.degree_of(m) != self.generators[gi].degree - 1)
                {
                    return Err(Error::DegreeMismatch(format!(
                        "d({g}) has a term {} of the wrong degree",
                        self.monomial_name(bad)
                    )));
                }
                for (m, c) in acc {
                    add_to(&mut out[gi], m, c);
                }
            }
        }
        Ok(out)
    }

    /// `d` on a monomial, extended from the generators by the Leibniz rule.
    fn differential_of(&self, m: &[usize], gens: &[Poly]) -> Poly {
        let mut out = Poly::new();
        for p in 0..m.len() {
            let prefix: Poly = BTreeMap::from([(m[..p].to_vec(), Rational::one())]);
            let suffix: Poly = BTreeMap::from([(m[p + 1..].to_vec(), Rational::one())]);
            let sign = sign_of_parity(self.degree_of(&m[..p]));
            let term = self.multiply_poly(&self.multiply_poly(&prefix, &gens[m[p]]), &suffix);
            for (k, c) in term {
                add_to(&mut out, k, c * &sign);
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct TensorDglaSpec {
    pub name: String,
    pub lie: LieSpec,
    pub graded: GradedAlgebraSpec,
}

/// Total dimension above which presets stop being exhaustively sweepable.
pub const TENSOR_DIMENSION_CAP: usize = 32;

/// Builds `g ⊗ A` and runs the validator on it.
pub fn make_tensor_dgla(spec: &TensorDglaSpec) -> Result<StructureConstantDgla> {
    let a = &spec.graded;
    let monos = a.monomials();
    let dim = spec.lie.basis.len() * monos.len();
    if dim > TENSOR_DIMENSION_CAP {
        return Err(Error::OutOfRange(format!(
            "dimension {dim} exceeds the cap of {TENSOR_DIMENSION_CAP}"
        )));
    }
    let table = spec.lie.table()?;
    let gens = a.generator_differentials()?;
    let id = |u: usize, m: &[usize]| format!("{}.{}", spec.lie.basis[u], a.monomial_name(m));

    let mut b = StructureConstantDgla::builder(&spec.name);
    for u in 0..spec.lie.basis.len() {
        for m in &monos {
            b = b.symbol(&id(u, m), a.degree_of(m));
        }
    }
    for u in 0..spec.lie.basis.len() {
        for m in &monos {
            let terms: Vec<(String, Rational)> = a
                .differential_of(m, &gens)
                .into_iter()
                .map(|(k, c)| (id(u, &k), c))
                .collect();
            if !terms.is_empty() {
                b.push_differential(id(u, m), terms);
            }
        }
    }
    let basis: Vec<(usize, &Monomial)> = (0..spec.lie.basis.len())
        .flat_map(|u| monos.iter().map(move |m| (u, m)))
        .collect();
    for (x, &(u, ma)) in basis.iter().enumerate() {
        for &(v, mb) in &basis[x..] {
            let (Some(lie), Some((m, sign))) = (table.get(&(u, v)), a.multiply(ma, mb)) else {
                continue;
            };
            let terms: Vec<(String, Rational)> =
                lie.iter().map(|(w, c)| (id(*w, &m), c * &sign)).collect();
            b.push_bracket(id(u, ma), id(v, mb), terms);
        }
    }
    b.build()
}
