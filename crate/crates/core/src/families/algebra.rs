//! Algebras over the families monad, stored as chosen sums, injections and
//! a cotuple solver, with seeded checks of the algebra laws.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::complexes::Degree;
use crate::dgcat::functor::Obj;
use crate::dgcat::product::Product;
use crate::dgcat::{precomposition_matrix, DgCat, DgFunctor, Elem};
use crate::exec::Sampler;
use crate::families::laws::sample_family;
use crate::families::{mu, AlphaCutoff, Families, Family, Mu};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::report::{scalars_json, Report, Tally};

pub trait TAlgebra: Send + Sync {
    type Carrier: DgCat;

    fn carrier(&self) -> &Self::Carrier;

    /// The chosen sum of a family.
    fn sum_obj(&self, family: &[Obj<Self::Carrier>]) -> Obj<Self::Carrier>;

    /// The closed degree-0 injection `family[x] -> sum_obj(family)`.
    fn injection(&self, family: &[Obj<Self::Carrier>], x: usize) -> Elem;

    /// The morphism `sum_obj(family) -> z` of degree `n` restricting to
    /// `components[x]` along each injection.
    fn cotuple(
        &self,
        family: &[Obj<Self::Carrier>],
        z: &Obj<Self::Carrier>,
        n: Degree,
        components: &[Elem],
    ) -> Elem;
}

/// `(T(B), μ_B)`.
pub struct FreeAlgebra<B> {
    pub carrier: Families<B>,
    mu: Mu<B>,
}

pub fn free_algebra<B: DgCat + Clone>(b: B) -> FreeAlgebra<B> {
    FreeAlgebra {
        carrier: Families::new(b.clone()),
        mu: mu(b, AlphaCutoff::Countable),
    }
}

impl<B: DgCat> TAlgebra for FreeAlgebra<B> {
    type Carrier = Families<B>;

    fn carrier(&self) -> &Families<B> {
        &self.carrier
    }

    fn sum_obj(&self, family: &[Family<B::Obj>]) -> Family<B::Obj> {
        self.mu.map_obj(&Family(family.to_vec()))
    }

    fn injection(&self, family: &[Family<B::Obj>], x: usize) -> Elem {
        let single = Family::singleton(family[x].clone());
        let all = Family(family.to_vec());
        let inclusion = self
            .mu
            .source
            .assemble(&single, &all, 0, |_, j| (j == x).then(|| self.carrier.identity(&family[x])));
        self.mu.map_elem(&single, &all, &inclusion)
    }

    fn cotuple(&self, family: &[Family<B::Obj>], z: &Family<B::Obj>, n: Degree, components: &[Elem]) -> Elem {
        let all = Family(family.to_vec());
        let single = Family::singleton(z.clone());
        let tuple = self
            .mu
            .source
            .assemble(&all, &single, n, |i, _| Some(components[i].clone()));
        self.mu.map_elem(&all, &single, &tuple)
    }
}

/// Formal finite sums of objects of `A0` with matrix Hom complexes; sums,
/// injections and cotuples are assembled directly as block matrices.
pub struct AdditiveHull<B> {
    pub carrier: Families<B>,
}

pub fn additive_hull<B: DgCat>(a0: B) -> AdditiveHull<B> {
    AdditiveHull {
        carrier: Families::new(a0),
    }
}

fn offsets<O>(family: &[Family<O>]) -> Vec<usize> {
    family
        .iter()
        .scan(0, |acc, f| {
            let o = *acc;
            *acc += f.len();
            Some(o)
        })
        .collect()
}

impl<B: DgCat> TAlgebra for AdditiveHull<B> {
    type Carrier = Families<B>;

    fn carrier(&self) -> &Families<B> {
        &self.carrier
    }

    fn sum_obj(&self, family: &[Family<B::Obj>]) -> Family<B::Obj> {
        Family(family.iter().flat_map(|f| f.0.iter().cloned()).collect())
    }

    fn injection(&self, family: &[Family<B::Obj>], x: usize) -> Elem {
        let off = offsets(family)[x];
        let src = &family[x];
        let sum = self.sum_obj(family);
        self.carrier
            .assemble(src, &sum, 0, |i, j| (j == off + i).then(|| self.carrier.base.identity(&src.0[i])))
    }

    fn cotuple(&self, family: &[Family<B::Obj>], z: &Family<B::Obj>, n: Degree, components: &[Elem]) -> Elem {
        let sum = self.sum_obj(family);
        let owner: Vec<(usize, usize)> = family
            .iter()
            .enumerate()
            .flat_map(|(x, f)| (0..f.len()).map(move |i| (x, i)))
            .collect();
        self.carrier.assemble(&sum, z, n, |p, j| {
            let (x, i) = owner[p];
            Some(self.carrier.block(&family[x], z, &components[x], i, j))
        })
    }
}

/// Componentwise sums on `A × B`.
pub struct ProductAlgebra<A: TAlgebra, B: TAlgebra> {
    pub left: A,
    pub right: B,
    pub carrier: Product<A::Carrier, B::Carrier>,
}

pub fn product_algebra<A, B>(left: A, right: B) -> ProductAlgebra<A, B>
where
    A: TAlgebra,
    B: TAlgebra,
    A::Carrier: Clone,
    B::Carrier: Clone,
{
    let carrier = Product::new(left.carrier().clone(), right.carrier().clone());
    ProductAlgebra { left, right, carrier }
}

impl<A: TAlgebra, B: TAlgebra> TAlgebra for ProductAlgebra<A, B> {
    type Carrier = Product<A::Carrier, B::Carrier>;

    fn carrier(&self) -> &Self::Carrier {
        &self.carrier
    }

    fn sum_obj(&self, family: &[Obj<Self::Carrier>]) -> Obj<Self::Carrier> {
        let (ls, rs): (Vec<_>, Vec<_>) = family.iter().cloned().unzip();
        (self.left.sum_obj(&ls), self.right.sum_obj(&rs))
    }

    fn injection(&self, family: &[Obj<Self::Carrier>], x: usize) -> Elem {
        let (ls, rs): (Vec<_>, Vec<_>) = family.iter().cloned().unzip();
        Product::<A::Carrier, B::Carrier>::pair(self.left.injection(&ls, x), self.right.injection(&rs, x))
    }

    fn cotuple(&self, family: &[Obj<Self::Carrier>], z: &Obj<Self::Carrier>, n: Degree, components: &[Elem]) -> Elem {
        let (ls, rs): (Vec<_>, Vec<_>) = family.iter().cloned().unzip();
        let (lc, rc): (Vec<Elem>, Vec<Elem>) = family
            .iter()
            .zip(components)
            .map(|(fx, c)| self.carrier.split(fx, z, c))
            .unzip();
        Product::<A::Carrier, B::Carrier>::pair(
            self.left.cotuple(&ls, &z.0, n, &lc),
            self.right.cotuple(&rs, &z.1, n, &rc),
        )
    }
}

pub(crate) fn random_vec(field: Field, dim: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..dim).map(|_| field.from_i64(rng.gen_range(-2..=2))).collect()
}

fn sample_list<O: Clone>(rng: &mut ChaCha8Rng, pool: &[O], max_len: usize) -> Vec<O> {
    sample_family(rng, pool, max_len).0
}

/// The matrix of `h ↦ (h ∘ ι_x)_x` from `Hom(ΣF, z)^n` to `∏_x Hom(F(x), z)^n`.
pub fn restriction_matrix<A: TAlgebra>(alg: &A, family: &[Obj<A::Carrier>], z: &Obj<A::Carrier>, n: Degree) -> Matrix {
    let cat = alg.carrier();
    let sum = alg.sum_obj(family);
    let blocks: Vec<Matrix> = family
        .iter()
        .enumerate()
        .map(|(x, fx)| precomposition_matrix(cat, fx, &sum, z, &alg.injection(family, x), n))
        .collect();
    let cols = cat.hom_dim(&sum, z, n);
    blocks
        .into_iter()
        .fold(Matrix::zeros(cat.field(), 0, cols), |acc, b| acc.vstack(&b))
}

/// Unit and associativity squares, the universal property of the chosen
/// sums, and consistency of the cotuple solver.
pub fn check_algebra<A: TAlgebra>(alg: &A, pool: &[Obj<A::Carrier>], sampler: &Sampler) -> Report {
    let cat = alg.carrier();
    let field = cat.field();
    let max_len = sampler.max_len;
    let results = sampler.run("algebra", |_, rng| {
        let mut t = Tally::new();
        let x = pool[rng.gen_range(0..pool.len())].clone();
        let single = [x.clone()];
        let ok = alg.sum_obj(&single) == x && alg.injection(&single, 0) == cat.identity(&x);
        t.record("algebra-unit", ok, || cat.describe(&x), || {
            json!({"sum": cat.describe(&alg.sum_obj(&single))})
        });

        let len = rng.gen_range(0..=max_len);
        let nested: Vec<Vec<Obj<A::Carrier>>> = (0..len).map(|_| sample_list(rng, pool, max_len)).collect();
        let flat: Vec<Obj<A::Carrier>> = nested.iter().flatten().cloned().collect();
        let inner: Vec<Obj<A::Carrier>> = nested.iter().map(|g| alg.sum_obj(g)).collect();
        let total = alg.sum_obj(&flat);
        let describe_nested = || {
            let parts: Vec<String> = nested
                .iter()
                .map(|g| g.iter().map(|o| cat.describe(o)).collect::<Vec<_>>().join(","))
                .map(|s| format!("[{s}]"))
                .collect();
            parts.join(" ")
        };
        let obj_ok = alg.sum_obj(&inner) == total;
        let mut bad = None;
        if obj_ok {
            let mut p = 0;
            'outer: for (a, g) in nested.iter().enumerate() {
                for i in 0..g.len() {
                    let direct = alg.injection(&flat, p);
                    let two = cat.compose(
                        &g[i],
                        &inner[a],
                        &total,
                        &alg.injection(&inner, a),
                        &alg.injection(g, i),
                    );
                    if direct != two {
                        bad = Some((a, i));
                        break 'outer;
                    }
                    p += 1;
                }
            }
        }
        t.record("algebra-associativity", obj_ok && bad.is_none(), describe_nested, || {
            json!({
                "flattened_sum": cat.describe(&total),
                "iterated_sum": cat.describe(&alg.sum_obj(&inner)),
                "injection": bad,
            })
        });

        let family = sample_list(rng, pool, max_len);
        let z = pool[rng.gen_range(0..pool.len())].clone();
        let sum = alg.sum_obj(&family);
        let describe = || {
            let fs: Vec<String> = family.iter().map(|o| cat.describe(o)).collect();
            format!("[{}] -> {}", fs.join(","), cat.describe(&z))
        };
        let closed = (0..family.len()).all(|x| {
            let i = alg.injection(&family, x);
            i.degree == 0 && cat.differential(&family[x], &sum, &i).is_zero()
        });
        t.record("injections-closed", closed, describe, || json!(null));
        let mut degrees: Vec<Degree> = cat.hom_dims(&sum, &z).into_keys().collect();
        for fx in &family {
            degrees.extend(cat.hom_dims(fx, &z).into_keys());
        }
        degrees.sort_unstable();
        degrees.dedup();
        let failing: Vec<Degree> = degrees
            .iter()
            .copied()
            .filter(|&n| {
                let m = restriction_matrix(alg, &family, &z, n);
                !(m.rows() == m.cols() && m.is_invertible())
            })
            .collect();
        t.record("universal-property", failing.is_empty(), describe, || json!({"degrees": failing}));

        if let Some(&n) = degrees.get(rng.gen_range(0..degrees.len().max(1))) {
            let comps: Vec<Elem> = family
                .iter()
                .map(|fx| Elem::new(n, random_vec(field, cat.hom_dim(fx, &z, n), rng)))
                .collect();
            let h = alg.cotuple(&family, &z, n, &comps);
            let mismatch = (0..family.len()).find(|&x| {
                cat.compose(&family[x], &sum, &z, &h, &alg.injection(&family, x)) != comps[x]
            });
            t.record("cotuple", mismatch.is_none(), describe, || {
                json!({"component": mismatch, "cotuple": scalars_json(&h.coeffs)})
            });
        }
        t
    });
    let mut tally = Tally::new();
    for t in results {
        tally.merge(t);
    }
    tally.into_report()
}

/// `G(ΣF) = Σ(G∘F)` on objects and `G(ι_x) = ι_x` on injections.
pub fn check_algebra_morphism<G, A, B>(g: &G, alg_a: &A, alg_b: &B, pool: &[Obj<G::Source>], sampler: &Sampler) -> Report
where
    G: DgFunctor,
    A: TAlgebra<Carrier = G::Source>,
    B: TAlgebra<Carrier = G::Target>,
{
    let (ca, cb) = (alg_a.carrier(), alg_b.carrier());
    let max_len = sampler.max_len;
    let results = sampler.run("algebra-morphism", |_, rng| {
        let mut t = Tally::new();
        let family = sample_list(rng, pool, max_len);
        let describe = || {
            let fs: Vec<String> = family.iter().map(|o| ca.describe(o)).collect();
            format!("[{}]", fs.join(","))
        };
        let image: Vec<Obj<G::Target>> = family.iter().map(|x| g.map_obj(x)).collect();
        let sum_a = alg_a.sum_obj(&family);
        let g_sum = g.map_obj(&sum_a);
        let sum_b = alg_b.sum_obj(&image);
        let obj_ok = g_sum == sum_b;
        t.record("preserves-sums", obj_ok, describe, || {
            json!({"image_of_sum": cb.describe(&g_sum), "sum_of_images": cb.describe(&sum_b)})
        });
        if obj_ok {
            let bad: Vec<usize> = (0..family.len())
                .filter(|&x| g.map_elem(&family[x], &sum_a, &alg_a.injection(&family, x)) != alg_b.injection(&image, x))
                .collect();
            t.record("preserves-injections", bad.is_empty(), describe, || json!({"injections": bad}));
        }
        t
    });
    let mut tally = Tally::new();
    for t in results {
        tally.merge(t);
    }
    tally.into_report()
}
