//! The five small generator categories, written down by hand with named
//! basis elements, their inclusions, and the classification of functors out
//! of them into twisted complexes.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::complexes::{Complex, Degree};
use crate::dgcat::h0::strict_inverse;
use crate::dgcat::{DgCat, DgFunctor, Elem, FiniteDgCategory, TableFunctor};
use crate::error::{Error, Result};
use crate::field::{axpy, Field};
use crate::matrix::Matrix;
use crate::twisted::{TwObj, Twisted};

/// A finite category whose basis elements carry names.
#[derive(Clone, Debug)]
pub struct Generator {
    pub cat: Arc<FiniteDgCategory>,
    names: HashMap<String, (usize, usize, Degree, usize)>,
    by_position: HashMap<(usize, usize, Degree), Vec<String>>,
}

impl Generator {
    /// `(source, target, element)` of a named basis element.
    pub fn elem(&self, name: &str) -> (usize, usize, Elem) {
        let (x, y, n, i) = self.names[name];
        let dim = self.cat.hom_dim(&x, &y, n);
        (x, y, Elem::basis(self.cat.field(), n, dim, i))
    }

    pub fn obj(&self, name: &str) -> usize {
        self.cat.find(name).expect("object of a generator category")
    }

    /// The name of basis element `i` of `Hom(x, y)^n`.
    pub fn name_of(&self, x: usize, y: usize, n: Degree, i: usize) -> &str {
        &self.by_position[&(x, y, n)][i]
    }

    /// Linear extension of an assignment of images to named basis elements.
    pub fn table<T: DgCat + Clone>(
        &self,
        target: T,
        obj_map: Vec<T::Obj>,
        image: impl Fn(&str) -> Elem,
    ) -> TableFunctor<T> {
        TableFunctor::from_fn(self.cat.clone(), target.clone(), obj_map.clone(), |x, y, e| {
            let dim = target.hom_dim(&obj_map[x], &obj_map[y], e.degree);
            let mut out = target.field().zeros(dim);
            for (i, c) in e.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                axpy(&mut out, c, &image(self.name_of(x, y, e.degree, i)).coeffs);
            }
            Elem::new(e.degree, out)
        })
    }
}

struct Builder {
    cat: FiniteDgCategory,
    names: HashMap<String, (usize, usize, Degree, usize)>,
    by_position: HashMap<(usize, usize, Degree), Vec<String>>,
}

impl Builder {
    fn new(field: Field, objects: &[&str]) -> Builder {
        let mut cat = FiniteDgCategory::new(field);
        for o in objects {
            cat.add_object(*o);
        }
        Builder {
            cat,
            names: HashMap::new(),
            by_position: HashMap::new(),
        }
    }

    /// Declares the basis of `Hom(x, y)` in order, with the differential
    /// given on named elements.
    fn hom(&mut self, x: usize, y: usize, basis: &[(&str, Degree)], d: &[(&str, &[(&str, i64)])]) {
        let field = self.cat.field();
        let mut dims: BTreeMap<Degree, usize> = BTreeMap::new();
        for &(name, n) in basis {
            let i = dims.entry(n).or_default();
            self.names.insert(name.to_string(), (x, y, n, *i));
            self.by_position.entry((x, y, n)).or_default().push(name.to_string());
            *i += 1;
        }
        let mut diffs: BTreeMap<Degree, Matrix> = BTreeMap::new();
        for &(src, terms) in d {
            let (_, _, n, i) = self.names[src];
            let m = diffs
                .entry(n)
                .or_insert_with(|| Matrix::zeros(field, dims.get(&(n + 1)).copied().unwrap_or(0), dims[&n]));
            for &(tgt, c) in terms {
                let (_, _, k, r) = self.names[tgt];
                assert_eq!(k, n + 1, "differential raises degree by one");
                m.set(r, i, field.from_i64(c));
            }
        }
        self.cat.set_hom(x, y, Complex::new(field, dims, diffs));
    }

    fn vector(&self, x: usize, y: usize, n: Degree, terms: &[(&str, i64)]) -> Vec<crate::field::Scalar> {
        let field = self.cat.field();
        let mut v = field.zeros(self.cat.hom_dim(&x, &y, n));
        for &(name, c) in terms {
            let (a, b, k, i) = self.names[name];
            assert_eq!((a, b, k), (x, y, n), "term {name} out of place");
            v[i] = field.from_i64(c);
        }
        v
    }

    fn identity(&mut self, x: usize, terms: &[(&str, i64)]) {
        let v = self.vector(x, x, 0, terms);
        self.cat.set_identity(x, v);
    }

    /// Records `g ∘ f = Σ c·h`.
    fn product(&mut self, g: &str, f: &str, result: &[(&str, i64)]) {
        let (y, z, m, a) = self.names[g];
        let (x, y2, n, b) = self.names[f];
        assert_eq!(y, y2, "{g} ∘ {f} not composable");
        let value = self.vector(x, z, m + n, result);
        self.cat.set_product((x, y, z), (m, a), (n, b), value);
    }

    /// `id ∘ φ = φ = φ ∘ id` for every basis element, when every identity is
    /// a single basis element.
    fn units(&mut self, ids: &[&str]) {
        let entries: Vec<(String, (usize, usize, Degree, usize))> =
            self.names.iter().map(|(k, v)| (k.clone(), *v)).collect();
        for (name, (x, y, _, _)) in entries {
            self.product(ids[y], &name, &[(&name, 1)]);
            self.product(&name, ids[x], &[(&name, 1)]);
        }
    }

    fn finish(self) -> Generator {
        Generator {
            cat: Arc::new(self.cat),
            names: self.names,
            by_position: self.by_position,
        }
    }
}

/// `𝒫`: one object `X` with `End(X) = k`.
pub fn point(field: Field) -> Generator {
    let mut b = Builder::new(field, &["X"]);
    b.hom(0, 0, &[("id", 0)], &[]);
    b.identity(0, &[("id", 1)]);
    b.units(&["id"]);
    b.finish()
}

/// `ℳ`: objects `0`, `1` and a closed degree-0 generator `f: 0 -> 1`.
pub fn morphism(field: Field) -> Generator {
    let mut b = Builder::new(field, &["0", "1"]);
    b.hom(0, 0, &[("id0", 0)], &[]);
    b.hom(1, 1, &[("id1", 0)], &[]);
    b.hom(0, 1, &[("f", 0)], &[]);
    b.identity(0, &[("id0", 1)]);
    b.identity(1, &[("id1", 1)]);
    b.units(&["id0", "id1"]);
    b.finish()
}

/// `𝒮` for `e = 1` and `𝒮⁻¹` for `e = -1`: objects `X`, `X[e]`, with
/// `s: X -> X[e]` of degree `-e` and `t: X[e] -> X` of degree `e` inverse
/// to each other.
fn shift_pair(field: Field, e: Degree) -> Generator {
    let shifted = format!("X[{e}]");
    let mut b = Builder::new(field, &["X", &shifted]);
    b.hom(0, 0, &[("id", 0)], &[]);
    b.hom(1, 1, &[("id'", 0)], &[]);
    b.hom(0, 1, &[("s", -e)], &[]);
    b.hom(1, 0, &[("t", e)], &[]);
    b.identity(0, &[("id", 1)]);
    b.identity(1, &[("id'", 1)]);
    b.units(&["id", "id'"]);
    b.product("t", "s", &[("id", 1)]);
    b.product("s", "t", &[("id'", 1)]);
    b.finish()
}

pub fn suspension(field: Field) -> Generator {
    shift_pair(field, 1)
}

pub fn cosuspension(field: Field) -> Generator {
    shift_pair(field, -1)
}

/// `𝒞`: the objects `0`, `1` of `ℳ` and the cone `K` of `f`, with Hom
/// complexes those of the twisted complexes `0̂`, `1̂`, `cone(f̂)`.
pub fn cone(field: Field) -> Generator {
    let mut b = Builder::new(field, &["0", "1", "cone(f)"]);
    let (o, i, k) = (0, 1, 2);
    b.hom(o, o, &[("id0", 0)], &[]);
    b.hom(i, i, &[("id1", 0)], &[]);
    b.hom(o, i, &[("f", 0)], &[]);
    b.hom(o, k, &[("a", -1), ("b", 0)], &[("a", &[("b", -1)])]);
    b.hom(i, k, &[("inj", 0)], &[]);
    b.hom(k, o, &[("p", 1)], &[]);
    b.hom(k, i, &[("q0", 0), ("q1", 1)], &[("q0", &[("q1", 1)])]);
    b.hom(
        k,
        k,
        &[("e00", 0), ("e11", 0), ("g", 1)],
        &[("e00", &[("g", -1)]), ("e11", &[("g", 1)])],
    );
    b.identity(o, &[("id0", 1)]);
    b.identity(i, &[("id1", 1)]);
    b.identity(k, &[("e00", 1), ("e11", 1)]);
    let products: &[(&str, &str, &[(&str, i64)])] = &[
        ("id0", "id0", &[("id0", 1)]),
        ("id1", "id1", &[("id1", 1)]),
        ("f", "id0", &[("f", 1)]),
        ("id1", "f", &[("f", 1)]),
        ("a", "id0", &[("a", 1)]),
        ("b", "id0", &[("b", 1)]),
        ("inj", "f", &[("b", 1)]),
        ("inj", "id1", &[("inj", 1)]),
        ("p", "a", &[("id0", 1)]),
        ("q0", "b", &[("f", 1)]),
        ("q1", "a", &[("f", 1)]),
        ("e00", "a", &[("a", 1)]),
        ("e11", "b", &[("b", 1)]),
        ("g", "a", &[("b", 1)]),
        ("q0", "inj", &[("id1", 1)]),
        ("e11", "inj", &[("inj", 1)]),
        ("id0", "p", &[("p", 1)]),
        ("f", "p", &[("q1", 1)]),
        ("a", "p", &[("e00", 1)]),
        ("b", "p", &[("g", 1)]),
        ("id1", "q0", &[("q0", 1)]),
        ("id1", "q1", &[("q1", 1)]),
        ("inj", "q0", &[("e11", 1)]),
        ("inj", "q1", &[("g", 1)]),
        ("p", "e00", &[("p", 1)]),
        ("q0", "e11", &[("q0", 1)]),
        ("q0", "g", &[("q1", 1)]),
        ("q1", "e00", &[("q1", 1)]),
        ("e00", "e00", &[("e00", 1)]),
        ("e11", "e11", &[("e11", 1)]),
        ("g", "e00", &[("g", 1)]),
        ("e11", "g", &[("g", 1)]),
    ];
    for (g, f, r) in products {
        b.product(g, f, r);
    }
    b.finish()
}

/// The codiscrete category on `names`: every Hom is `k` in degree 0,
/// spanned by `e(x,y)`, with `e(y,z) ∘ e(x,y) = e(x,z)`.
pub fn codiscrete(field: Field, names: &[&str]) -> Generator {
    let mut b = Builder::new(field, names);
    let n = names.len();
    let e = |x: usize, y: usize| format!("e({},{})", names[x], names[y]);
    for x in 0..n {
        for y in 0..n {
            b.hom(x, y, &[(&e(x, y), 0)], &[]);
        }
        b.identity(x, &[(&e(x, x), 1)]);
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                b.product(&e(y, z), &e(x, y), &[(&e(x, z), 1)]);
            }
        }
    }
    b.finish()
}

/// The five generator categories and the three inclusions.
pub struct Generators {
    pub point: Generator,
    pub suspension: Generator,
    pub cosuspension: Generator,
    pub morphism: Generator,
    pub cone: Generator,
    pub s_inclusion: TableFunctor<Arc<FiniteDgCategory>>,
    pub s_inv_inclusion: TableFunctor<Arc<FiniteDgCategory>>,
    pub c_inclusion: TableFunctor<Arc<FiniteDgCategory>>,
}

pub fn build_generators(field: Field) -> Generators {
    let (p, s, si, m, c) = (
        point(field),
        suspension(field),
        cosuspension(field),
        morphism(field),
        cone(field),
    );
    let s_inclusion = p.table(s.cat.clone(), vec![0], |_| s.elem("id").2);
    let s_inv_inclusion = p.table(si.cat.clone(), vec![0], |_| si.elem("id").2);
    let c_inclusion = m.table(c.cat.clone(), vec![0, 1], |name| c.elem(name).2);
    Generators {
        point: p,
        suspension: s,
        cosuspension: si,
        morphism: m,
        cone: c,
        s_inclusion,
        s_inv_inclusion,
        c_inclusion,
    }
}

/// Identity blocks `(i, i)` between two twisted complexes with the same
/// base terms, of degree `n`.
pub(crate) fn diagonal<C: DgCat>(tw: &Twisted<C>, m: &TwObj<C::Obj>, n_obj: &TwObj<C::Obj>, n: Degree, offset: usize, source_side: bool) -> Elem {
    tw.assemble(m, n_obj, n, |i, j| {
        let hit = if source_side { i == j + offset } else { j == i + offset };
        let term = if source_side { &n_obj.terms[j].0 } else { &m.terms[i].0 };
        hit.then(|| tw.base.identity(term))
    })
}

/// The functor `𝒮 -> Tw(A)` (or `𝒮⁻¹`, for `e = -1`) sending `X` to `x`
/// and `X[e]` to `x[e]`.
pub fn shift_functor<C: DgCat + Clone>(gen: &Generator, tw: &Twisted<C>, x: &TwObj<C::Obj>, e: Degree) -> TableFunctor<Twisted<C>> {
    let xe = tw.shift_obj(x, e);
    let sigma = diagonal(tw, x, &xe, -e, 0, false);
    let tau = diagonal(tw, &xe, x, e, 0, false);
    gen.table(tw.clone(), vec![x.clone(), xe.clone()], |name| match name {
        "id" => tw.identity(x),
        "id'" => tw.identity(&xe),
        "s" => sigma.clone(),
        "t" => tau.clone(),
        _ => unreachable!("basis element {name}"),
    })
}

/// The functor `𝒞 -> Tw(A)` sending `f` to a closed degree-0 `f: x -> y`
/// and `K` to `cone(f)`.
pub fn cone_functor<C: DgCat + Clone>(
    gen: &Generator,
    tw: &Twisted<C>,
    x: &TwObj<C::Obj>,
    y: &TwObj<C::Obj>,
    f: &Elem,
) -> Result<TableFunctor<Twisted<C>>> {
    let z = tw.cone_obj(x, y, f)?;
    let k = x.len();
    let iota_x = diagonal(tw, x, &z, -1, 0, false);
    let iota_y = diagonal(tw, y, &z, 0, k, false);
    let pi_x = diagonal(tw, &z, x, 1, 0, true);
    let pi_y = diagonal(tw, &z, y, 0, k, true);
    let b = tw.compose(x, y, &z, &iota_y, f);
    let q1 = tw.compose(&z, x, y, f, &pi_x);
    let e00 = tw.compose(&z, x, &z, &iota_x, &pi_x);
    let e11 = tw.compose(&z, y, &z, &iota_y, &pi_y);
    let g = tw.compose(&z, y, &z, &iota_y, &q1);
    Ok(gen.table(tw.clone(), vec![x.clone(), y.clone(), z.clone()], |name| match name {
        "id0" => tw.identity(x),
        "id1" => tw.identity(y),
        "f" => f.clone(),
        "a" => iota_x.clone(),
        "b" => b.clone(),
        "inj" => iota_y.clone(),
        "p" => pi_x.clone(),
        "q0" => pi_y.clone(),
        "q1" => q1.clone(),
        "e00" => e00.clone(),
        "e11" => e11.clone(),
        "g" => g.clone(),
        _ => unreachable!("basis element {name}"),
    }))
}

/// What a functor out of `𝒮` (or `𝒮⁻¹`) amounts to: two objects and a
/// strict isomorphism `x[e] -> y`.
#[derive(Clone, Debug)]
pub struct ShiftData<O> {
    pub x: TwObj<O>,
    pub y: TwObj<O>,
    pub witness: Elem,
}

/// What a functor out of `𝒞` amounts to: a closed degree-0 `f: x -> y`, an
/// object `z` and a strict isomorphism `cone(f) -> z`.
#[derive(Clone, Debug)]
pub struct ConeData<O> {
    pub x: TwObj<O>,
    pub y: TwObj<O>,
    pub f: Elem,
    pub z: TwObj<O>,
    pub witness: Elem,
}

fn require_strict_iso<C: DgCat>(tw: &Twisted<C>, a: &TwObj<C::Obj>, b: &TwObj<C::Obj>, w: &Elem) -> Result<Elem> {
    if w.coeffs.len() != tw.hom_dim(a, b, 0) || !tw.differential(a, b, w).is_zero() {
        return Err(Error::Ineligible("witness is not a closed degree-0 morphism".into()));
    }
    strict_inverse(tw, a, b, w).ok_or_else(|| Error::Ineligible("witness is not invertible".into()))
}

pub fn classify_functor_from_shift<C, F>(gen: &Generator, h: &F, e: Degree) -> Result<ShiftData<C::Obj>>
where
    C: DgCat,
    F: DgFunctor<Source = FiniteDgCategory, Target = Twisted<C>>,
{
    let tw = h.target();
    let (x, y) = (h.map_obj(&0), h.map_obj(&1));
    let (_, _, s) = gen.elem("s");
    let w = Elem::new(0, h.map_elem(&0, &1, &s).coeffs);
    let xe = tw.shift_obj(&x, e);
    require_strict_iso(tw, &xe, &y, &w)?;
    Ok(ShiftData { x, y, witness: w })
}

/// The functor determined by shift data; it agrees with the classified
/// functor on objects and basis elements.
pub fn rebuild_from_shift<C: DgCat + Clone>(gen: &Generator, tw: &Twisted<C>, data: &ShiftData<C::Obj>, e: Degree) -> Result<TableFunctor<Twisted<C>>> {
    let xe = tw.shift_obj(&data.x, e);
    let inv = require_strict_iso(tw, &xe, &data.y, &data.witness)?;
    let s = Elem::new(-e, data.witness.coeffs.clone());
    let t = Elem::new(e, inv.coeffs);
    Ok(gen.table(tw.clone(), vec![data.x.clone(), data.y.clone()], |name| match name {
        "id" => tw.identity(&data.x),
        "id'" => tw.identity(&data.y),
        "s" => s.clone(),
        "t" => t.clone(),
        _ => unreachable!("basis element {name}"),
    }))
}

pub fn classify_functor_from_cone<C, F>(gen: &Generator, r: &F) -> Result<ConeData<C::Obj>>
where
    C: DgCat,
    F: DgFunctor<Source = FiniteDgCategory, Target = Twisted<C>>,
{
    let tw = r.target();
    let (x, y, z) = (r.map_obj(&0), r.map_obj(&1), r.map_obj(&2));
    let image = |name: &str| {
        let (a, b, e) = gen.elem(name);
        r.map_elem(&a, &b, &e)
    };
    let f = image("f");
    let c = tw.cone_obj(&x, &y, &f)?;
    let mut coeffs = image("a").coeffs;
    coeffs.extend(image("inj").coeffs);
    let witness = Elem::new(0, coeffs);
    require_strict_iso(tw, &c, &z, &witness)?;
    Ok(ConeData { x, y, f, z, witness })
}

pub fn rebuild_from_cone<C: DgCat + Clone>(gen: &Generator, tw: &Twisted<C>, data: &ConeData<C::Obj>) -> Result<TableFunctor<Twisted<C>>> {
    let canonical = cone_functor(gen, tw, &data.x, &data.y, &data.f)?;
    let c = canonical.map_obj(&2);
    let u = require_strict_iso(tw, &c, &data.z, &data.witness)?;
    let objs = [data.x.clone(), data.y.clone(), data.z.clone()];
    Ok(gen.table(tw.clone(), objs.to_vec(), |name| {
        let (a, b, e) = gen.elem(name);
        let mut img = canonical.map_elem(&a, &b, &e);
        let src = canonical.map_obj(&a);
        if b == 2 {
            img = tw.compose(&src, &c, &data.z, &data.witness, &img);
        }
        if a == 2 {
            let tgt = if b == 2 { data.z.clone() } else { canonical.map_obj(&b) };
            img = tw.compose(&data.z, &c, &tgt, &img, &u);
        }
        img
    }))
}
