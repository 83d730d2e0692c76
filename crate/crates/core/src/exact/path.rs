//! Exact structure on path categories: shifts applied in each component and
//! cones given by the matrix `Φ`.

use crate::complexes::Degree;
use crate::dgcat::functor::Obj;
use crate::dgcat::h0::is_h0_invertible;
use crate::dgcat::{DgCat, Elem};
use crate::error::{Error, Result};
use crate::exact::{canonical_exact, strict_iso, CanonicalExact, Carrier, Choice, ExactDgAlgebra};
use crate::families::algebra::TAlgebra;
use crate::path::{cone_in_path, path_algebra_structure, PathAlgebra, PathCategory, PathMorphism, PathObj};
use crate::twisted::generators::diagonal;
use crate::twisted::{TwObj, Twisted, TwistedSums};

/// `Σp` for `p = (f: x -> y)`: the map `Σx -> Σy` conjugate to `f` by the
/// chosen witnesses, with witness `(w_x, w_y, 0)`.
pub fn shift_in_path<E: ExactDgAlgebra>(
    e: &E,
    path: &PathCategory<Carrier<E>>,
    p: &PathObj<Obj<Carrier<E>>>,
    s: Degree,
) -> Result<Choice<PathObj<Obj<Carrier<E>>>>> {
    let carrier = e.algebra().carrier();
    let tw = Twisted::new(carrier);
    let (cx, cy) = (e.shift(&p.source, s)?, e.shift(&p.target, s)?);
    let (xs, ys) = (
        tw.shift_obj(&tw.yoneda(p.source.clone()), s),
        tw.shift_obj(&tw.yoneda(p.target.clone()), s),
    );
    let (hx, hy) = (tw.yoneda(cx.object.clone()), tw.yoneda(cy.object.clone()));
    let wx_inv = strict_iso(&tw, &xs, &hx, &cx.witness)?;
    strict_iso(&tw, &ys, &hy, &cy.witness)?;
    let fs = Elem::new(0, p.map.coeffs.clone());
    let conj = tw.compose(&hx, &xs, &hy, &tw.compose(&xs, &ys, &hy, &cy.witness, &fs), &wx_inv);
    let object = path.object(cx.object.clone(), cy.object.clone(), Elem::new(0, conj.coeffs))?;
    let m = PathMorphism {
        mx: Elem::new(-s, cx.witness.coeffs),
        my: Elem::new(-s, cy.witness.coeffs),
        h: path.zero_h(p, &object, -s),
    };
    Ok(Choice {
        witness: Elem::new(0, PathCategory::<Carrier<E>>::join(&m).coeffs),
        object,
    })
}

/// `P(Tw(A0))` with componentwise sums and shifts and `Φ`-cones.
pub struct PathExact<C: DgCat> {
    pub base: CanonicalExact<C>,
    pub alg: PathAlgebra<TwistedSums<C>>,
}

pub fn path_exact<C: DgCat + Clone>(a0: C) -> PathExact<C> {
    let base = canonical_exact(a0);
    let alg = path_algebra_structure(base.sums.clone());
    PathExact { base, alg }
}

impl<C: DgCat> PathExact<C> {
    pub fn path(&self) -> &PathCategory<Twisted<C>> {
        &self.alg.carrier
    }
}

impl<C: DgCat> ExactDgAlgebra for PathExact<C> {
    type Alg = PathAlgebra<TwistedSums<C>>;

    fn algebra(&self) -> &Self::Alg {
        &self.alg
    }

    fn suspension(&self, p: &PathObj<TwObj<C::Obj>>) -> Result<Choice<PathObj<TwObj<C::Obj>>>> {
        shift_in_path(&self.base, self.path(), p, 1)
    }

    fn cosuspension(&self, p: &PathObj<TwObj<C::Obj>>) -> Result<Choice<PathObj<TwObj<C::Obj>>>> {
        shift_in_path(&self.base, self.path(), p, -1)
    }

    /// The `Φ`-object of `c: p -> q`; the witness `cone(p̂ -> q̂) -> Φ̂`
    /// includes `p[1]` by the inclusions of `x[1]`, `y[1]` and `q` by the
    /// canonical morphism, all with zero homotopy.
    fn cone(&self, p: &PathObj<TwObj<C::Obj>>, q: &PathObj<TwObj<C::Obj>>, c: &Elem) -> Result<Choice<PathObj<TwObj<C::Obj>>>> {
        let path = self.path();
        let tw = &path.base;
        let k = cone_in_path(path, p, q, c)?;
        let phi = &k.object;
        let shifted = PathMorphism {
            mx: diagonal(tw, &p.source, &phi.source, -1, 0, false),
            my: diagonal(tw, &p.target, &phi.target, -1, 0, false),
            h: path.zero_h(p, phi, -1),
        };
        let mut coeffs = PathCategory::<Twisted<C>>::join(&shifted).coeffs;
        coeffs.extend(k.inclusion.coeffs);
        Ok(Choice {
            object: k.object,
            witness: Elem::new(0, coeffs),
        })
    }

    fn contains(&self, p: &PathObj<TwObj<C::Obj>>) -> Result<()> {
        let tw = &self.path().base;
        tw.check_object(&p.source)?;
        tw.check_object(&p.target)?;
        if !tw.differential(&p.source, &p.target, &p.map).is_zero() || !is_h0_invertible(tw, &p.source, &p.target, &p.map)? {
            return Err(Error::Ineligible(format!("{} is not a path object", self.path().describe(p))));
        }
        Ok(())
    }
}
