//! Classification of normal functions: each one is sandwiched between the
//! functions of two filtration subgroups at a common point, either directly
//! (type 1) or with a Levi subsystem on which a smaller depth is used.
//!
//! [`classify`] produces a certificate; [`verify`] checks it using only the
//! filtration formulas, without reusing any of the pipeline.

use serde::Serialize;
use thiserror::Error;

use crate::complete::{downward_closure, is_complete, RootSet};
use crate::concave::{
    f_eps, filtration_fn, filtration_fn_plus, is_normal_fn, levi_filtration_fns, type_of,
    ConcaveError, ConcaveFn, NormalKind,
};
use crate::polytope::{alcove_rows, e_rows, joint_system, solve, LinearSystem, ZTerm};
use crate::rational::{qi, Q};
use crate::rootsys::RootSystem;
use crate::zeta::{
    mean_cycle, span_rank, span_subsystem, strongly_orthogonal, zeta, zprime_families,
    ZetaCertificate,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Concave(#[from] ConcaveError),
    #[error("no point found for the {branch:?} branch:\n{system}")]
    Infeasible { branch: Branch, system: String },
    #[error("structural assumption failed: {0}")]
    Structure(String),
}

/// Which construction produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    /// Type 1 with `z(Ψ) < z′(Ψ)`.
    Type1,
    /// Type 1 with `z(Ψ) = z′(Ψ)`.
    Type1Degenerate,
    /// `f − f_I` takes three values.
    Type2,
}

impl Branch {
    pub fn name(&self) -> &'static str {
        match self {
            Branch::Type1 => "type1",
            Branch::Type1Degenerate => "type1-degenerate",
            Branch::Type2 => "type2",
        }
    }
}

/// The shape of the sandwich.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// `f_{x,r} ≤ f ≤ f⁺_{x,r}`.
    Type1 { x: Vec<Q>, r: Q },
    /// Depth `r` on the Levi subsystem and `r_prime > r` elsewhere.
    TypeLevi {
        x: Vec<Q>,
        r: Q,
        r_prime: Q,
        levi: RootSet,
    },
}

impl Classification {
    pub fn x(&self) -> &[Q] {
        match self {
            Classification::Type1 { x, .. } | Classification::TypeLevi { x, .. } => x,
        }
    }

    pub fn r(&self) -> Q {
        match self {
            Classification::Type1 { r, .. } | Classification::TypeLevi { r, .. } => *r,
        }
    }
}

/// Output of [`classify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub branch: Branch,
    pub classification: Classification,
    /// Where `f − f_I` is maximal.
    pub psi: RootSet,
    pub zeta: ZetaCertificate,
    /// The values of `z` and `z′` at the returned point.
    pub z: Q,
    pub z_prime: Q,
}

/// Subsets used in the degenerate type 1 branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerateData {
    pub families: Vec<Vec<usize>>,
    /// Roots in the span of the optimal families.
    pub levi: RootSet,
    /// `Ψ` together with the roots of the optimal families.
    pub psi_up: RootSet,
    /// Downward closure of `Ψ ∩ levi`.
    pub psi_down: RootSet,
}

pub fn degenerate_data(rs: &RootSystem, psi: &RootSet) -> DegenerateData {
    let families = zprime_families(rs, psi);
    let mut used = RootSet::empty(rs.len());
    for fam in &families {
        for &a in fam {
            used.insert(a);
        }
    }
    let gens: Vec<usize> = used.iter().collect();
    let levi = span_subsystem(rs, &gens);
    let psi_up = psi.union(&used);
    let psi_down = downward_closure(rs, &psi.intersection(&levi));
    DegenerateData {
        families,
        levi,
        psi_up,
        psi_down,
    }
}

/// Subsets used in the type 2 branch, and the shifted function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Type2Data {
    pub v_min: i64,
    /// Span of the roots where `f − f_I` is minimal.
    pub levi: RootSet,
    /// Roots of `levi` where `f − f_I = v_min + 1`.
    pub psi_levi: RootSet,
    /// Roots where `f − f_I = v_min + 2`.
    pub psi_top: RootSet,
    /// `f + 1` where `f − f_I` is minimal, `f` elsewhere.
    pub shifted: ConcaveFn,
}

pub fn type2_data(rs: &RootSystem, f: &ConcaveFn) -> Result<Type2Data, ClassifyError> {
    let e = f_eps(rs, f)?;
    let v = *e.iter().min().expect("non-empty");
    let low: Vec<usize> = rs.roots().filter(|&a| e[a] == v).collect();
    let levi = span_subsystem(rs, &low);
    let psi_levi = RootSet::from_indices(rs.len(), levi.iter().filter(|&a| e[a] == v + 1));
    let psi_top = RootSet::from_indices(rs.len(), rs.roots().filter(|&a| e[a] == v + 2));
    let shifted = ConcaveFn::new(
        rs.roots()
            .map(|a| f.get(a) + qi(i64::from(e[a] == v)))
            .collect(),
    );
    Ok(Type2Data {
        v_min: v,
        levi,
        psi_levi,
        psi_top,
        shifted,
    })
}

/// Inputs of the joint search for `(x, z, z′)`.
#[derive(Debug, Clone)]
pub enum PointMode<'a> {
    /// `x ∈ E_{Ψ,z} ∩ E_{Ψ,z′}` with `z(Ψ) ≤ z < z′ ≤ z′(Ψ)`.
    Nondegenerate {
        psi: &'a RootSet,
        zeta: &'a ZetaCertificate,
    },
    /// `x ∈ E_{Ψ₀,z} ∩ E_{Ψ′,z′}` with `E_{Ψ₀,z}` taken inside the levi
    /// subsystem, `z(Ψ₀) ≤ z ≤ z* ≤ z′ ≤ z′(Ψ′)` and `z < z′`.
    Degenerate {
        levi: &'a RootSet,
        psi_levi: &'a RootSet,
        psi_up: &'a RootSet,
        z_star: Q,
        z_low_levi: Q,
        z_high_up: Q,
    },
    /// `x ∈ E_{Ψ′,z′}`, the levi conditions at `z`, and the positivity side
    /// conditions on extended-basis roots of the levi part.
    Type2 {
        levi: &'a RootSet,
        psi_levi: &'a RootSet,
        psi_top: &'a RootSet,
        z_low_levi: Q,
        z_high_top: Q,
    },
}

/// Solves for `(x, z, z′)`; returns the system on failure.
pub fn find_classification_point(
    rs: &RootSystem,
    mode: &PointMode<'_>,
) -> Result<(Vec<Q>, Q, Q), LinearSystem> {
    let n = rs.rank();
    let (zv, zpv) = (n, n + 1);
    let mut s = joint_system(rs);
    let one = qi(1);
    if !matches!(mode, PointMode::Type2 { .. }) {
        // z′ − z > 0
        s.add(&[(zpv, one), (zv, -one)], qi(0), true);
    }
    match mode {
        PointMode::Nondegenerate { psi, zeta } => {
            e_rows(rs, psi, ZTerm::Var(zv), false, &mut s);
            e_rows(rs, psi, ZTerm::Var(zpv), false, &mut s);
            s.add(&[(zv, one)], -zeta.z_low, false);
            s.add(&[(zpv, -one)], zeta.z_high, false);
        }
        PointMode::Degenerate {
            levi,
            psi_levi,
            psi_up,
            z_star,
            z_low_levi,
            z_high_up,
        } => {
            levi_rows(rs, levi, psi_levi, zv, &mut s);
            e_rows(rs, psi_up, ZTerm::Var(zpv), false, &mut s);
            s.add(&[(zv, one)], -*z_low_levi, false);
            s.add(&[(zv, -one)], *z_star, false);
            s.add(&[(zpv, one)], -*z_star, false);
            s.add(&[(zpv, -one)], *z_high_up, false);
        }
        PointMode::Type2 {
            levi,
            psi_levi,
            psi_top,
            z_low_levi,
            z_high_top,
        } => {
            e_rows(rs, psi_top, ZTerm::Var(zpv), false, &mut s);
            levi_rows(rs, levi, psi_levi, zv, &mut s);
            // (α, ε_α)(x) > 0 and > z′ on extended-basis roots of the levi part
            for &g in rs.extended_basis() {
                if psi_levi.contains(g) {
                    let eps = qi(rs.epsilon(g));
                    s.add(&root_terms(rs, g, 1), eps, true);
                    let mut t = root_terms(rs, g, 1);
                    t.push((zpv, -one));
                    s.add(&t, eps, true);
                }
            }
            s.add(&[(zv, one)], -*z_low_levi, false);
            s.add(&[(zv, -one)], one, true);
            s.add(&[(zpv, one)], qi(0), false);
            s.add(&[(zpv, -one)], *z_high_top, false);
            s.add(&[(zpv, -one)], one, true);
        }
    }
    let res = solve(&s);
    match res.witness {
        Some(w) => Ok((w[..n].to_vec(), w[zv], w[zpv])),
        None => Err(s),
    }
}

/// Membership in `E_{Ψ₀,z}` inside the levi subsystem, one row per root:
/// `α(x) ≤ z − ε_α` on `Ψ₀` and `α(x) ≥ z − ε_α` on the rest of the levi.
fn levi_rows(rs: &RootSystem, levi: &RootSet, psi_levi: &RootSet, zv: usize, s: &mut LinearSystem) {
    for a in levi.iter() {
        let eps = qi(rs.epsilon(a));
        if psi_levi.contains(a) {
            let mut t = root_terms(rs, a, -1);
            t.push((zv, qi(1)));
            s.add(&t, -eps, false);
        } else {
            let mut t = root_terms(rs, a, 1);
            t.push((zv, qi(-1)));
            s.add(&t, eps, false);
        }
    }
}

fn root_terms(rs: &RootSystem, a: usize, sign: i64) -> Vec<(usize, Q)> {
    rs.form(a)
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c != 0)
        .map(|(j, c)| (j, qi(sign * c)))
        .collect()
}

/// Runs the classification pipeline on a normal function.
pub fn classify(rs: &RootSystem, f: &ConcaveFn) -> Result<Certificate, ClassifyError> {
    let ty = type_of(rs, f)?;
    match ty.kind {
        NormalKind::Type1 => {
            let psi = ty.psi;
            let zc = zeta(rs, &psi);
            if zc.z_low < zc.z_high {
                let mode = PointMode::Nondegenerate {
                    psi: &psi,
                    zeta: &zc,
                };
                let (x, z, zp) = find_classification_point(rs, &mode).map_err(|s| {
                    ClassifyError::Infeasible {
                        branch: Branch::Type1,
                        system: s.to_string(),
                    }
                })?;
                Ok(Certificate {
                    branch: Branch::Type1,
                    classification: Classification::Type1 {
                        x,
                        r: qi(ty.base) + zp,
                    },
                    psi,
                    zeta: zc,
                    z,
                    z_prime: zp,
                })
            } else {
                let d = degenerate_data(rs, &psi);
                if !is_complete(rs, &d.psi_up) {
                    return Err(ClassifyError::Structure("psi_up is not complete".into()));
                }
                let psi_levi = psi.intersection(&d.levi);
                let z_low_levi = mean_cycle(rs, &psi_levi, true).map_or(qi(0), |c| c.value);
                let z_high_up = zeta(rs, &d.psi_up).z_high;
                let mode = PointMode::Degenerate {
                    levi: &d.levi,
                    psi_levi: &psi_levi,
                    psi_up: &d.psi_up,
                    z_star: zc.z_low,
                    z_low_levi,
                    z_high_up,
                };
                let (x, z, zp) = find_classification_point(rs, &mode).map_err(|s| {
                    ClassifyError::Infeasible {
                        branch: Branch::Type1Degenerate,
                        system: s.to_string(),
                    }
                })?;
                Ok(Certificate {
                    branch: Branch::Type1Degenerate,
                    classification: Classification::TypeLevi {
                        x,
                        r: qi(ty.base) + z,
                        r_prime: qi(ty.base) + zp,
                        levi: d.levi,
                    },
                    psi,
                    zeta: zc,
                    z,
                    z_prime: zp,
                })
            }
        }
        NormalKind::Type2 => {
            let d = type2_data(rs, f)?;
            if !is_complete(rs, &d.psi_top) {
                return Err(ClassifyError::Structure(
                    "top level set is not complete".into(),
                ));
            }
            let z_low_levi = mean_cycle(rs, &d.psi_levi, true).map_or(qi(0), |c| c.value);
            let z_high_top = zeta(rs, &d.psi_top).z_high;
            let mode = PointMode::Type2 {
                levi: &d.levi,
                psi_levi: &d.psi_levi,
                psi_top: &d.psi_top,
                z_low_levi,
                z_high_top,
            };
            let (x, z, zp) =
                find_classification_point(rs, &mode).map_err(|s| ClassifyError::Infeasible {
                    branch: Branch::Type2,
                    system: s.to_string(),
                })?;
            Ok(Certificate {
                branch: Branch::Type2,
                classification: Classification::TypeLevi {
                    x,
                    r: qi(d.v_min) + z,
                    r_prime: qi(d.v_min + 1) + zp,
                    levi: d.levi,
                },
                zeta: zeta(rs, &ty.psi),
                psi: ty.psi,
                z,
                z_prime: zp,
            })
        }
    }
}

/// Checks a classification against `f` using only the filtration formulas.
pub fn verify_detailed(rs: &RootSystem, f: &ConcaveFn, c: &Classification) -> Result<(), String> {
    if f.len() != rs.len() {
        return Err("function length does not match the root system".into());
    }
    let x = c.x();
    if x.len() != rs.rank() {
        return Err("point has the wrong dimension".into());
    }
    for &g in rs.extended_basis() {
        if rs.pairing(g, x) < -qi(rs.epsilon(g)) {
            return Err(format!(
                "point lies outside the closed alcove at {}",
                rs.label(g)
            ));
        }
    }
    let (lower, upper) = match c {
        Classification::Type1 { x, r } => (filtration_fn_plus(rs, x, r), filtration_fn(rs, x, r)),
        Classification::TypeLevi {
            x,
            r,
            r_prime,
            levi,
        } => {
            if r_prime <= r {
                return Err("r' must exceed r".into());
            }
            if levi.is_empty() {
                return Err("levi subsystem is empty".into());
            }
            let gens: Vec<usize> = levi.iter().collect();
            if span_subsystem(rs, &gens) != *levi {
                return Err("levi set is not the root subsystem it spans".into());
            }
            if span_rank(rs, levi) >= rs.rank() {
                return Err("levi subsystem is not proper".into());
            }
            let b = levi_filtration_fns(rs, x, r, r_prime, levi);
            (b.lower, b.upper)
        }
    };
    for a in rs.roots() {
        if upper.get(a) > f.get(a) {
            return Err(format!(
                "f({}) = {} is below the outer bound {}",
                rs.label(a),
                f.get(a),
                upper.get(a)
            ));
        }
        if f.get(a) > lower.get(a) {
            return Err(format!(
                "f({}) = {} is above the inner bound {}",
                rs.label(a),
                f.get(a),
                lower.get(a)
            ));
        }
    }
    Ok(())
}

pub fn verify(rs: &RootSystem, f: &ConcaveFn, c: &Classification) -> bool {
    verify_detailed(rs, f, c).is_ok()
}

/// `f` is of type 1 and `z(Ψ) < z′(Ψ)`.
pub fn type1_converse_check(rs: &RootSystem, f: &ConcaveFn) -> Result<bool, ClassifyError> {
    let ty = type_of(rs, f)?;
    if ty.kind != NormalKind::Type1 {
        return Ok(false);
    }
    let zc = zeta(rs, &ty.psi);
    Ok(zc.z_low < zc.z_high)
}

/// A point `x` of the closed alcove and `r` with `f = f_{x,r}` exactly, if
/// one exists. Found by a direct linear search independent of the pipeline.
pub fn exact_filtration_point(rs: &RootSystem, f: &ConcaveFn) -> Option<(Vec<Q>, Q)> {
    let n = rs.rank();
    let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    names.push("r".into());
    let mut s = LinearSystem::new(names);
    alcove_rows(rs, &mut s);
    for a in rs.roots() {
        let fa = f.get(a);
        // f(α) − r + α(x) ≥ 0
        let mut t = root_terms(rs, a, 1);
        t.push((n, qi(-1)));
        s.add(&t, fa, false);
        // r − α(x) − f(α) + 1 > 0
        let mut t = root_terms(rs, a, -1);
        t.push((n, qi(1)));
        s.add(&t, qi(1) - fa, true);
    }
    let w = solve(&s).witness?;
    Some((w[..n].to_vec(), w[n]))
}

/// A point `x` of the closed alcove and `r < r′` with
/// `lower ≤ f ≤ upper` for [`levi_filtration_fns`] at `levi`, if one exists.
/// Found by a direct linear search independent of the pipeline.
pub fn levi_sandwich_point(
    rs: &RootSystem,
    f: &ConcaveFn,
    levi: &RootSet,
) -> Option<(Vec<Q>, Q, Q)> {
    let n = rs.rank();
    let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    names.push("r".into());
    names.push("r'".into());
    let mut s = LinearSystem::new(names);
    alcove_rows(rs, &mut s);
    s.add(&[(n + 1, qi(1)), (n, qi(-1))], qi(0), true);
    for a in rs.roots() {
        let depth = if levi.contains(a) { n } else { n + 1 };
        let fa = f.get(a);
        let mut t = root_terms(rs, a, 1);
        t.push((depth, qi(-1)));
        s.add(&t, fa, false);
        let mut t = root_terms(rs, a, -1);
        t.push((depth, qi(1)));
        s.add(&t, qi(1) - fa, false);
    }
    let w = solve(&s).witness?;
    Some((w[..n].to_vec(), w[n], w[n + 1]))
}

/// Whether `basis` is a set of simple roots of the subsystem `sub`: it is
/// linearly independent of the right size, and every root of `sub` is, up to
/// sign, reached from `basis` by adding basis elements one at a time.
pub fn is_simple_system(rs: &RootSystem, basis: &[usize], sub: &RootSet) -> bool {
    if basis.len() != span_rank(rs, sub)
        || span_rank(rs, &RootSet::from_indices(rs.len(), basis.iter().copied())) != basis.len()
        || basis.iter().any(|&b| !sub.contains(b))
    {
        return false;
    }
    let mut positive = RootSet::from_indices(rs.len(), basis.iter().copied());
    let mut queue: Vec<usize> = basis.to_vec();
    while let Some(a) = queue.pop() {
        for &b in basis {
            if let Some(c) = rs.add(a, b) {
                if !positive.contains(c) {
                    positive.insert(c);
                    queue.push(c);
                }
            }
        }
    }
    sub.iter()
        .all(|a| positive.contains(a) != positive.contains(rs.neg(a)))
}

/// Structural facts behind the degenerate type 1 branch: the levi subsystem
/// is proper, `Ψ′` is complete, `z(Ψ′) = z(Ψ)` and `z′(Ψ′) > z′(Ψ)`.
pub fn degenerate_structure_check(rs: &RootSystem, psi: &RootSet) -> Result<(), String> {
    let zc = zeta(rs, psi);
    if !zc.is_degenerate() {
        return Err("z(Ψ) < z′(Ψ)".into());
    }
    let d = degenerate_data(rs, psi);
    if span_rank(rs, &d.levi) >= rs.rank() {
        return Err("levi subsystem is not proper".into());
    }
    if !is_complete(rs, &d.psi_up) {
        return Err("Ψ′ is not complete".into());
    }
    let up = zeta(rs, &d.psi_up);
    if up.z_low != zc.z_low {
        return Err(format!(
            "z(Ψ′) = {} differs from z(Ψ) = {}",
            up.z_low, zc.z_low
        ));
    }
    if up.z_high <= zc.z_high {
        return Err(format!("z′(Ψ′) = {} does not exceed z′(Ψ)", up.z_high));
    }
    Ok(())
}

/// Structural facts behind the type 2 branch: roots at the two extreme
/// levels are strongly orthogonal, the levi subsystem is proper, and the
/// shifted function is normal of type 1 with `z = 0` on its top level set.
pub fn type2_structure_check(rs: &RootSystem, f: &ConcaveFn) -> Result<(), String> {
    let d = type2_data(rs, f).map_err(|e| e.to_string())?;
    let e = f_eps(rs, f).map_err(|e| e.to_string())?;
    let low: Vec<usize> = rs.roots().filter(|&a| e[a] == d.v_min).collect();
    for &a in &low {
        for b in d.psi_top.iter() {
            if !strongly_orthogonal(rs, a, b) {
                return Err(format!(
                    "{} and {} are not strongly orthogonal",
                    rs.label(a),
                    rs.label(b)
                ));
            }
        }
    }
    if span_rank(rs, &d.levi) >= rs.rank() {
        return Err("levi subsystem is not proper".into());
    }
    if !is_normal_fn(rs, &d.shifted) {
        return Err("shifted function is not normal".into());
    }
    let ty = type_of(rs, &d.shifted).map_err(|e| e.to_string())?;
    if ty.kind != NormalKind::Type1 || ty.psi != d.psi_top {
        return Err("shifted function is not of type 1 with top level set Ψ′".into());
    }
    let z = zeta(rs, &d.psi_top).z_low;
    if z != qi(0) {
        return Err(format!("z(Ψ′) = {z}, expected 0"));
    }
    Ok(())
}

/// Whether `Δ′ ∩ Φ₀` is a set of simple roots of the type 2 levi subsystem.
/// This fails in types B, C and F when the real span of the minimal level
/// set contains short roots outside its integer span.
pub fn type2_levi_basis_check(rs: &RootSystem, f: &ConcaveFn) -> Result<(), String> {
    let d = type2_data(rs, f).map_err(|e| e.to_string())?;
    let basis: Vec<usize> = rs
        .extended_basis()
        .iter()
        .copied()
        .filter(|&g| d.levi.contains(g))
        .collect();
    if is_simple_system(rs, &basis, &d.levi) {
        Ok(())
    } else {
        let labels: Vec<String> = basis.iter().map(|&g| rs.label(g)).collect();
        Err(format!(
            "Δ′ ∩ Φ₀ = {{{}}} is not a set of simple roots of Φ₀",
            labels.join(", ")
        ))
    }
}

/// Classifies each irreducible factor separately.
pub fn classify_product(
    parts: &[(RootSystem, ConcaveFn)],
) -> Result<Vec<Certificate>, ClassifyError> {
    parts.iter().map(|(rs, f)| classify(rs, f)).collect()
}

pub fn verify_product(parts: &[(RootSystem, ConcaveFn)], certs: &[Certificate]) -> bool {
    parts.len() == certs.len()
        && parts
            .iter()
            .zip(certs)
            .all(|((rs, f), c)| verify(rs, f, &c.classification))
}
