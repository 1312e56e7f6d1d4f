//! The operation calculus on constructible functions.
//!
//! Six operations act on integer-valued functions: pullback and exceptional
//! pullback along a map, the two pushforwards (compactly supported and
//! plain), pointwise tensor, and duality. All are exact integer
//! computations on cells.
//!
//! * `pullback`: (f^*φ)(σ) = φ(f(σ)).
//! * `pushforward_c`: (f_!φ)(τ) = Σ_{f(σ)=τ} (−1)^{dim σ − dim τ} φ(σ) —
//!   fibrewise compactly supported Euler integration.
//! * `dual`: (Dφ)(σ) = Σ_{τ ⊇ σ, τ ∈ S} (−1)^{dim τ} φ(τ). On an
//!   order-convex cell set this is an involution: the interval of cells
//!   between σ and any ρ ⊇ σ inside the set is a full Boolean lattice, so
//!   the double sum telescopes to (1−1)^{dim ρ − dim σ}.
//! * `pushforward` (plain direct image) is defined as D ∘ f_! ∘ D, and the
//!   exceptional pullback as D ∘ f^* ∘ D; the engine's central comparisons
//!   ask when these conjugates coincide with their compactly supported
//!   counterparts.
//!
//! On top of the six operations sit derived operators: restriction and
//! extension by zero, the direct image along an open inclusion computed
//! without building the map (`open_pushforward`), its boundary values
//! (`boundary_stalk`), monodromy-style nearby values at the center of a
//! pointed cone (`nearby`), and an inclusion–exclusion reconstruction of
//! boundary values from an open cover (`cech_sum`).

use crate::cellset::{parity, CellSet};
use crate::error::{Error, Result};
use crate::function::Function;
use crate::map::SimplicialMap;
use std::collections::BTreeMap;

/// Largest supported open-cover size for `cech_sum` (the sum has 2^n − 1
/// terms).
pub const MAX_COVER: usize = 12;

fn require_on(phi: &Function, space: &CellSet, what: &str) -> Result<()> {
    if phi.space() == space {
        Ok(())
    } else {
        Err(Error::SpaceMismatch(format!(
            "function does not live on the {what} of the map"
        )))
    }
}

/// Pullback f^*: composes a function on the target with the map.
pub fn pullback(f: &SimplicialMap, phi: &Function) -> Result<Function> {
    require_on(phi, f.target(), "target")?;
    let values = f
        .source()
        .members()
        .iter()
        .map(|&id| phi.value(f.image_cell(id)))
        .collect();
    Function::new(f.source().clone(), values)
}

/// Compactly supported pushforward f_!: fibrewise Euler integral.
///
/// Each source cell σ contributes (−1)^{dim σ − dim f(σ)} φ(σ) to its image
/// cell; over a target cell this totals the compactly supported Euler
/// characteristic of the fibre, weighted by φ.
pub fn pushforward_c(f: &SimplicialMap, phi: &Function) -> Result<Function> {
    require_on(phi, f.source(), "source")?;
    let target = f.target();
    let mut values = vec![0i64; target.len()];
    for (pos, &id) in f.source().members().iter().enumerate() {
        let img = f.image_cell(id);
        let d_src = f.source().complex().simplex(id).dim();
        let d_img = target.complex().simplex(img).dim();
        let slot = target
            .position(img)
            .expect("map sends cells to cells by construction");
        values[slot] += parity(d_src - d_img) * phi.values()[pos];
    }
    Function::new(target.clone(), values)
}

/// Duality D: alternating sum over the cofaces inside the carrier.
///
/// An involution on every locally closed carrier.
pub fn dual(phi: &Function) -> Function {
    let space = phi.space();
    let complex = space.complex();
    let mask = space.mask();
    let values = space
        .members()
        .iter()
        .map(|&sigma| {
            let own = parity(complex.simplex(sigma).dim()) * phi.value(sigma);
            let above: i64 = complex
                .cofaces_of(sigma)
                .iter()
                .filter(|&&tau| mask[tau])
                .map(|&tau| parity(complex.simplex(tau).dim()) * phi.value(tau))
                .sum();
            own + above
        })
        .collect();
    Function::new(space.clone(), values).expect("same arity as the carrier")
}

/// Plain pushforward f_* = D ∘ f_! ∘ D.
pub fn pushforward(f: &SimplicialMap, phi: &Function) -> Result<Function> {
    Ok(dual(&pushforward_c(f, &dual(phi))?))
}

/// Exceptional pullback f^! = D ∘ f^* ∘ D.
pub fn exc_pullback(f: &SimplicialMap, phi: &Function) -> Result<Function> {
    Ok(dual(&pullback(f, &dual(phi))?))
}

/// Restriction of a function to a subset of its carrier.
pub fn restrict(phi: &Function, z: &CellSet) -> Result<Function> {
    z.require_same_ambient(phi.space())?;
    if !z.is_subset_of(phi.space()) {
        return Err(Error::NotSubset(
            "restriction target is not inside the carrier".into(),
        ));
    }
    let values = z.members().iter().map(|&id| phi.value(id)).collect();
    Function::new(z.clone(), values)
}

/// Extension by zero to a larger space containing the carrier.
pub fn extend_by_zero(phi: &Function, x: &CellSet) -> Result<Function> {
    x.require_same_ambient(phi.space())?;
    if !phi.space().is_subset_of(x) {
        return Err(Error::NotSubset(
            "carrier is not inside the extension target".into(),
        ));
    }
    let values = x.members().iter().map(|&id| phi.value(id)).collect();
    Function::new(x.clone(), values)
}

/// Direct image along the inclusion of the carrier, an open subset, into
/// `x`: the conjugate D_x ∘ (extension by zero) ∘ D_carrier.
///
/// Agrees with `pushforward` along the inclusion map; off the carrier it
/// records the limiting values a section spreads onto the boundary.
pub fn open_pushforward(phi: &Function, x: &CellSet) -> Result<Function> {
    if !phi.space().is_open_in(x) {
        return Err(Error::NotSubset(
            "carrier is not an open subset of the space".into(),
        ));
    }
    Ok(dual(&extend_by_zero(&dual(phi), x)?))
}

/// Boundary values of the direct image: pushes `phi` forward from its open
/// carrier into `x` and restricts to `z`.
///
/// The engine's vanishing statements assert this is zero on the closed
/// complement for cone-star models; its failure to vanish distinguishes
/// genuinely real boundaries.
pub fn boundary_stalk(phi: &Function, x: &CellSet, z: &CellSet) -> Result<Function> {
    let pushed = open_pushforward(phi, x)?;
    restrict(&pushed, z)
}

/// Nearby values at the center of a pointed cone.
///
/// The target of `f` must be the open star of its unique vertex cell (a
/// pointed cone; the centerless cells are the generic part). For each cell
/// x over the center, the value is the signed count
/// Σ (−1)^{dim σ − dim g} φ(σ) over cells σ in the star of x mapping onto a
/// fixed top-dimensional generic cell g. The count is computed for every
/// top-dimensional generic cell and must agree; disagreement is reported as
/// an error naming the two witnesses.
pub fn nearby(f: &SimplicialMap, phi: &Function) -> Result<Function> {
    phi.space().require_same_ambient(f.source())?;
    if !phi.space().is_subset_of(f.source()) {
        return Err(Error::NotSubset(
            "function carrier is not inside the map source".into(),
        ));
    }
    let target = f.target();
    let tk = target.complex();
    let zero_cells: Vec<_> = target
        .members()
        .iter()
        .copied()
        .filter(|&id| tk.simplex(id).dim() == 0)
        .collect();
    let &center = match zero_cells.as_slice() {
        [c] => c,
        _ => {
            return Err(Error::NotDiskModel(format!(
                "target has {} vertex cells; a pointed cone has exactly one",
                zero_cells.len()
            )))
        }
    };
    let star = CellSet::new_unchecked(tk.clone(), vec![center]).star();
    if &star != target {
        return Err(Error::NotDiskModel(
            "target is not the open star of its center".into(),
        ));
    }
    let top = target
        .members()
        .iter()
        .map(|&id| tk.simplex(id).dim())
        .max()
        .expect("non-empty target");
    if top == 0 {
        return Err(Error::NotDiskModel(
            "target has no generic cells around its center".into(),
        ));
    }
    let generic: Vec<_> = target
        .members()
        .iter()
        .copied()
        .filter(|&id| tk.simplex(id).dim() == top)
        .collect();

    let source = f.source();
    let sk = source.complex();
    let source_mask = source.mask();
    let fiber: Vec<_> = source
        .members()
        .iter()
        .copied()
        .filter(|&id| f.image_cell(id) == center)
        .collect();
    let z = CellSet::new(sk.clone(), fiber)?;

    let count_via = |g: usize| -> Vec<i64> {
        z.members()
            .iter()
            .map(|&x| {
                std::iter::once(x)
                    .chain(sk.cofaces_of(x).iter().copied())
                    .filter(|&t| source_mask[t] && f.image_cell(t) == g)
                    .map(|t| parity(sk.simplex(t).dim() - top) * phi.value(t))
                    .sum()
            })
            .collect()
    };

    let reference = count_via(generic[0]);
    for &g in &generic[1..] {
        let other = count_via(g);
        if other != reference {
            return Err(Error::GenericCellDisagreement(format!(
                "counts via {} and {} differ ({:?} vs {:?})",
                tk.simplex(generic[0]),
                tk.simplex(g),
                reference,
                other
            )));
        }
    }
    Function::new(z, reference)
}

/// Inclusion–exclusion reconstruction of boundary values from an open
/// cover.
///
/// `phi` lives on an open subset U of `x`; `pieces` are open subsets of `x`
/// whose union must contain `z`. Over every non-empty subset I of the
/// pieces, the boundary values of φ restricted to ∩I are computed locally
/// and combined with sign (−1)^{|I|−1}. The result equals the global
/// boundary values on `z`.
pub fn cech_sum(
    phi: &Function,
    x: &CellSet,
    z: &CellSet,
    pieces: &[CellSet],
) -> Result<Function> {
    let n = pieces.len();
    if n == 0 {
        return Err(Error::MalformedInput("empty open cover".into()));
    }
    if n > MAX_COVER {
        return Err(Error::CoverTooLarge { n, max: MAX_COVER });
    }
    if !phi.space().is_open_in(x) {
        return Err(Error::NotSubset(
            "carrier is not an open subset of the space".into(),
        ));
    }
    if !z.is_subset_of(x) {
        return Err(Error::NotSubset(
            "boundary set is not inside the space".into(),
        ));
    }
    for v in pieces {
        if !v.is_open_in(x) {
            return Err(Error::InvalidDecomposition(
                "a cover piece is not open in the space".into(),
            ));
        }
    }
    if let Some(&missed) = z
        .members()
        .iter()
        .find(|&&c| !pieces.iter().any(|v| v.contains(c)))
    {
        return Err(Error::InvalidDecomposition(format!(
            "the cover misses boundary cell {}",
            x.complex().simplex(missed)
        )));
    }

    let u = phi.space();
    let mut acc = vec![0i64; z.len()];
    for bits in 1u32..(1u32 << n) {
        let sign = if bits.count_ones() % 2 == 1 { 1 } else { -1 };
        let mut v_i: Option<CellSet> = None;
        for (j, piece) in pieces.iter().enumerate() {
            if bits & (1 << j) != 0 {
                v_i = Some(match v_i {
                    None => piece.clone(),
                    Some(cur) => cur.intersection(piece)?,
                });
            }
        }
        let v_i = v_i.expect("bits is non-zero");
        let z_i = v_i.intersection(z)?;
        if z_i.is_empty() {
            continue;
        }
        let u_i = v_i.intersection(u)?;
        let phi_i = restrict(phi, &u_i)?;
        let s_i = boundary_stalk(&phi_i, &v_i, &z_i)?;
        for (pos, &cell) in z_i.members().iter().enumerate() {
            acc[z.position(cell).expect("z_i ⊆ z")] += sign * s_i.values()[pos];
        }
    }
    Function::new(z.clone(), acc)
}

/// Compactly supported Euler integral Σ (−1)^{dim σ} φ(σ).
pub fn euler_integral_c(phi: &Function) -> i64 {
    let complex = phi.space().complex();
    phi.space()
        .members()
        .iter()
        .zip(phi.values())
        .map(|(&id, &v)| parity(complex.simplex(id).dim()) * v)
        .sum()
}

/// Borel–Moore-style Euler integral: the compactly supported integral of
/// the dual. For the constant 1 on a closed space this is the ordinary
/// Euler characteristic.
pub fn euler_integral(phi: &Function) -> i64 {
    euler_integral_c(&dual(phi))
}

/// Convenience: the map to a one-point space.
pub fn collapse_to_point(space: &CellSet) -> Result<SimplicialMap> {
    let point = CellSet::all(std::sync::Arc::new(
        crate::complex::Complex::from_facets("point", &[vec![0]])?,
    ));
    let vm: BTreeMap<_, _> = space
        .complex()
        .vertex_ids()
        .iter()
        .map(|&v| (v, 0))
        .collect();
    SimplicialMap::new(space.clone(), point, vm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Complex, SimplexId};
    use crate::simplex::{Simplex, VertexId};
    use std::sync::Arc;

    fn id_of(k: &Complex, verts: &[VertexId]) -> SimplexId {
        k.id_of(&Simplex::new(verts.to_vec()).unwrap()).unwrap()
    }

    fn interval() -> Arc<Complex> {
        Arc::new(Complex::from_facets("interval", &[vec![0, 1]]).unwrap())
    }

    /// Cone over an n-gon: apex 0, rim 1..=n.
    fn cone(n: VertexId) -> Arc<Complex> {
        let facets: Vec<Vec<VertexId>> = (1..=n)
            .map(|i| vec![0, i, if i == n { 1 } else { i + 1 }])
            .collect();
        Arc::new(Complex::from_facets(format!("cone{n}"), &facets).unwrap())
    }

    /// The open star of the apex: cone point, spokes, triangles — no rim.
    fn apex_star(k: &Arc<Complex>) -> CellSet {
        CellSet::new(k.clone(), vec![id_of(k, &[0])]).unwrap().star()
    }

    #[test]
    fn dual_of_one_frozen_values() {
        let x = CellSet::all(interval());
        assert_eq!(dual(&Function::one(x)).values(), &[0, 0, -1]);

        let tetra = CellSet::all(Arc::new(
            Complex::from_facets(
                "tetra",
                &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
            )
            .unwrap(),
        ));
        assert!(
            dual(&Function::one(tetra)).values().iter().all(|&v| v == 1),
            "a closed surface is self-dual: D1 = 1"
        );

        let k = cone(6);
        let disk = apex_star(&k);
        assert_eq!(disk.len(), 13);
        assert!(
            dual(&Function::one(disk)).values().iter().all(|&v| v == 1),
            "the cone star is even-dimensional-smooth in the duality sense"
        );

        let closed_disk = CellSet::all(k.clone());
        let d = dual(&Function::one(closed_disk));
        assert_eq!(d.value(id_of(&k, &[0])), 1, "apex keeps value 1");
        assert_eq!(d.value(id_of(&k, &[1])), 0, "rim vertex drops to 0");
        assert_eq!(d.value(id_of(&k, &[1, 2])), 0, "rim edge drops to 0");
        assert_eq!(d.value(id_of(&k, &[0, 1])), 1, "spoke keeps value 1");
    }

    #[test]
    fn dual_is_an_involution() {
        let k = cone(6);
        let half_open = {
            let iv = interval();
            CellSet::new(iv.clone(), vec![id_of(&iv, &[1]), id_of(&iv, &[0, 1])]).unwrap()
        };
        let spaces = [
            CellSet::all(interval()),
            half_open,
            apex_star(&k),
            apex_star(&k).difference(&CellSet::new(k.clone(), vec![id_of(&k, &[0])]).unwrap()).unwrap(),
            CellSet::all(k),
        ];
        for space in spaces {
            let values: Vec<i64> = (0..space.len() as i64).map(|i| 3 * i - 5).collect();
            let phi = Function::new(space, values).unwrap();
            assert_eq!(dual(&dual(&phi)), phi);
        }
    }

    #[test]
    fn pushforward_to_a_point_weighs_compactness() {
        let k = interval();
        let e = id_of(&k, &[0, 1]);
        let cases: [(&str, Vec<SimplexId>, i64, i64); 3] = [
            ("closed", vec![0, 1, e], 1, 1),
            ("open", vec![e], -1, 1),
            ("half-open", vec![id_of(&k, &[1]), e], 0, 1),
        ];
        for (name, cells, want_c, want_plain) in cases {
            let space = CellSet::new(k.clone(), cells).unwrap();
            let f = collapse_to_point(&space).unwrap();
            let one = Function::one(space);
            let shrieked = pushforward_c(&f, &one).unwrap();
            let starred = pushforward(&f, &one).unwrap();
            assert_eq!(shrieked.values(), &[want_c], "{name}: compact");
            assert_eq!(starred.values(), &[want_plain], "{name}: plain");
        }
    }

    #[test]
    fn proper_maps_have_one_pushforward() {
        let k = interval();
        let x = CellSet::all(k.clone());
        let f = collapse_to_point(&x).unwrap();
        assert!(f.is_proper());
        let phi = Function::new(x.clone(), vec![2, -7, 4]).unwrap();
        assert_eq!(
            pushforward_c(&f, &phi).unwrap(),
            pushforward(&f, &phi).unwrap()
        );

        let origin = CellSet::new(k.clone(), vec![id_of(&k, &[0])]).unwrap();
        let i = SimplicialMap::inclusion(&origin, &x).unwrap();
        assert!(i.is_proper());
        let psi = Function::new(origin, vec![5]).unwrap();
        assert_eq!(
            pushforward_c(&i, &psi).unwrap(),
            pushforward(&i, &psi).unwrap()
        );
    }

    #[test]
    fn endpoint_pullbacks_frozen() {
        let k = interval();
        let x = CellSet::all(k.clone());
        let origin = CellSet::new(k.clone(), vec![id_of(&k, &[0])]).unwrap();
        let i = SimplicialMap::inclusion(&origin, &x).unwrap();
        let one = Function::one(x);
        assert_eq!(pullback(&i, &one).unwrap().values(), &[1]);
        assert_eq!(
            exc_pullback(&i, &one).unwrap().values(),
            &[0],
            "the endpoint of a closed interval is singular for the twist"
        );
    }

    #[test]
    fn cone_star_center_has_trivial_twist() {
        let k = cone(6);
        let disk = apex_star(&k);
        let origin = CellSet::new(k.clone(), vec![id_of(&k, &[0])]).unwrap();
        let i = SimplicialMap::inclusion(&origin, &disk).unwrap();
        let one = Function::one(disk);
        assert_eq!(pullback(&i, &one).unwrap().values(), &[1]);
        assert_eq!(
            exc_pullback(&i, &one).unwrap().values(),
            &[1],
            "the cone star center is non-singular for the twist"
        );
    }

    #[test]
    fn open_pushforward_agrees_with_pushforward_along_inclusion() {
        let k = interval();
        let x = CellSet::all(k.clone());
        let u = CellSet::new(k.clone(), vec![id_of(&k, &[0, 1])]).unwrap();
        let j = SimplicialMap::inclusion(&u, &x).unwrap();
        let phi = Function::new(u, vec![3]).unwrap();
        let via_map = pushforward(&j, &phi).unwrap();
        let direct = open_pushforward(&phi, &x).unwrap();
        assert_eq!(via_map, direct);
        assert_eq!(direct.values(), &[3, 3, 3], "the section spreads to both ends");
    }

    #[test]
    fn boundary_stalk_vanishes_on_the_cone_star_but_not_on_an_interval() {
        let k = cone(6);
        let disk = apex_star(&k);
        let origin = CellSet::new(k.clone(), vec![id_of(&k, &[0])]).unwrap();
        let punctured = disk.difference(&origin).unwrap();
        let stalk =
            boundary_stalk(&Function::one(punctured), &disk, &origin).unwrap();
        assert_eq!(stalk.values(), &[0], "no boundary contribution at the center");

        let iv = interval();
        let x = CellSet::all(iv.clone());
        let u = CellSet::new(iv.clone(), vec![id_of(&iv, &[0, 1])]).unwrap();
        let end = CellSet::new(iv.clone(), vec![id_of(&iv, &[0])]).unwrap();
        let stalk = boundary_stalk(&Function::one(u), &x, &end).unwrap();
        assert_eq!(stalk.values(), &[1], "an interval end sees the open edge");
    }

    #[test]
    fn nearby_counts_cover_sheets() {
        // Identity on the cone star: one sheet.
        let k6 = cone(6);
        let disk = apex_star(&k6);
        let id = SimplicialMap::identity(&disk);
        let nb = nearby(&id, &Function::one(disk.clone())).unwrap();
        assert_eq!(nb.values(), &[1]);

        // The double wrap of a 12-gon cone star onto the hexagon cone star.
        let k12 = cone(12);
        let big = apex_star(&k12);
        let mut vm = BTreeMap::from([(0u32, 0u32)]);
        for i in 1..=12u32 {
            vm.insert(i, (i - 1) % 6 + 1);
        }
        let wrap = SimplicialMap::new(big.clone(), disk, vm).unwrap();
        let nb = nearby(&wrap, &Function::one(big)).unwrap();
        assert_eq!(nb.values(), &[2], "two sheets over the generic part");
    }

    #[test]
    fn nearby_rejects_bad_targets_and_fold_asymmetry() {
        // Whole interval: two vertex cells, not a pointed cone.
        let iv = interval();
        let x = CellSet::all(iv.clone());
        let id = SimplicialMap::identity(&x);
        assert!(matches!(
            nearby(&id, &Function::one(x)).unwrap_err(),
            Error::NotDiskModel(_)
        ));

        // A three-pronged star folded onto a two-sided one: the generic
        // counts 2 and 1 disagree.
        let y = Arc::new(
            Complex::from_facets("claw", &[vec![0, 1], vec![0, 2], vec![0, 3]]).unwrap(),
        );
        let path = Arc::new(Complex::from_facets("path", &[vec![0, 1], vec![1, 2]]).unwrap());
        let y_star = CellSet::new(y.clone(), vec![id_of(&y, &[0])]).unwrap().star();
        let mid_star = CellSet::new(path.clone(), vec![id_of(&path, &[1])])
            .unwrap()
            .star();
        let fold = SimplicialMap::new(
            y_star.clone(),
            mid_star,
            BTreeMap::from([(0, 1), (1, 0), (2, 0), (3, 2)]),
        )
        .unwrap();
        assert!(matches!(
            nearby(&fold, &Function::one(y_star)).unwrap_err(),
            Error::GenericCellDisagreement(_)
        ));
    }

    #[test]
    fn cech_reconstructs_boundary_values_on_an_interval() {
        let iv = interval();
        let x = CellSet::all(iv.clone());
        let u = CellSet::new(iv.clone(), vec![id_of(&iv, &[0, 1])]).unwrap();
        let z = x.difference(&u).unwrap();
        let v0 = CellSet::new(iv.clone(), vec![id_of(&iv, &[0])]).unwrap().star();
        let v1 = CellSet::new(iv.clone(), vec![id_of(&iv, &[1])]).unwrap().star();
        let phi = Function::one(u);

        let local = cech_sum(&phi, &x, &z, &[v0.clone(), v1.clone()]).unwrap();
        let global = boundary_stalk(&phi, &x, &z).unwrap();
        assert_eq!(local, global);
        assert_eq!(local.values(), &[1, 1]);

        // A cover that misses one end is rejected.
        assert!(matches!(
            cech_sum(&phi, &x, &z, &[v0.clone()]).unwrap_err(),
            Error::InvalidDecomposition(_)
        ));
        // Too many pieces are rejected before any work happens.
        let many = vec![v0; MAX_COVER + 1];
        assert!(matches!(
            cech_sum(&phi, &x, &z, &many).unwrap_err(),
            Error::CoverTooLarge { .. }
        ));
    }

    #[test]
    fn euler_integrals_frozen() {
        let iv = interval();
        let open = CellSet::new(iv.clone(), vec![id_of(&iv, &[0, 1])]).unwrap();
        assert_eq!(euler_integral_c(&Function::one(open.clone())), -1);
        assert_eq!(euler_integral(&Function::one(open)), 1);

        let circle = CellSet::all(Arc::new(
            Complex::from_facets("circle", &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap(),
        ));
        assert_eq!(euler_integral_c(&Function::one(circle.clone())), 0);
        assert_eq!(euler_integral(&Function::one(circle)), 0);

        let k = cone(6);
        for space in [apex_star(&k), CellSet::all(k)] {
            assert_eq!(euler_integral_c(&Function::one(space.clone())), 1);
            assert_eq!(euler_integral(&Function::one(space)), 1);
        }
    }

    #[test]
    fn projection_formula_on_a_small_case() {
        let k = interval();
        let x = CellSet::all(k.clone());
        let f = collapse_to_point(&x).unwrap();
        let phi = Function::new(x.clone(), vec![2, 3, 5]).unwrap();
        let psi = Function::new(f.target().clone(), vec![-4]).unwrap();
        let lhs = pushforward_c(&f, &phi.tensor(&pullback(&f, &psi).unwrap()).unwrap()).unwrap();
        let rhs = pushforward_c(&f, &phi).unwrap().tensor(&psi).unwrap();
        assert_eq!(lhs, rhs);
    }
}
