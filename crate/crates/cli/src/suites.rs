//! Named verification suites over the built-in corpora (rationals only).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use gvbimod::algebra::AlgebraMorphism;
use gvbimod::corpus::Corpus;
use gvbimod::diagnostics::{right_dual, strongness_report, FlatnessProbe};
use gvbimod::distributor::{check_mixed_pentagons, check_naturality, check_triangles, distributor_left, kron_vec, tilde_variant, Side};
use gvbimod::duality::{
    double_dual_map, internal_hom_left, internal_hom_left_vs_cotensor, internal_hom_left_vs_dual, internal_hom_right,
    internal_hom_right_vs_cotensor, internal_hom_right_vs_dual, second_tensor_comparison, varpi, varpi_natural_in_first,
    varpi_natural_in_second,
};
use gvbimod::ew::{
    coinduce, coinduce_direct, coinduction_adjunction_dims, eilenberg_watts_left_exact, induce, induction_adjunction_dims,
    induction_triangles,
};
use gvbimod::linalg::Matrix;
use gvbimod::tensor::{cotensor_over, induced_map, tensor_over};
use gvbimod::{Bimodule, BimoduleMap, GvError, QBimodule, Rational, Scalar, Subspace};

type Q = Rational;

pub const SUITES: [&str; 3] = ["paper-examples", "coherence", "flatness"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub pass: bool,
    pub details: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

type CheckResult = Result<(bool, Value), GvError>;

fn check(id: &str, f: impl FnOnce() -> CheckResult) -> Check {
    match f() {
        Ok((pass, details)) => Check { id: id.to_string(), pass, details },
        Err(e) => Check { id: id.to_string(), pass: false, details: json!({ "error": e.to_string() }) },
    }
}

pub fn run_suite(name: &str, seed: u64) -> Option<SuiteReport> {
    let checks = match name {
        "paper-examples" => paper_examples(seed),
        "coherence" => coherence(seed),
        "flatness" => flatness(),
        _ => return None,
    };
    Some(SuiteReport { suite: name.to_string(), seed, pass: checks.iter().all(|c| c.pass), checks })
}

fn corpora() -> Result<[Corpus<Q>; 2], GvError> {
    Ok([Corpus::dual_numbers()?, Corpus::a3()?])
}

fn module<'a>(c: &'a Corpus<Q>, name: &str) -> Result<&'a QBimodule, GvError> {
    c.module(name).ok_or_else(|| GvError::InvalidInput(format!("corpus has no {name}")))
}

fn unit_vec(n: usize, i: usize) -> Vec<Q> {
    (0..n).map(|j| Q::from_i64((i == j) as i64)).collect()
}

fn hom_basis(x: &QBimodule, y: &QBimodule) -> Result<Vec<BimoduleMap<Q>>, GvError> {
    let h = x.hom_space(y)?;
    (0..h.dim())
        .map(|l| BimoduleMap::new(x.clone(), y.clone(), Matrix::from_vec(y.dim(), x.dim(), h.basis_vector(l))?))
        .collect()
}

fn random_map(x: &QBimodule, y: &QBimodule, rng: &mut ChaCha8Rng) -> Result<BimoduleMap<Q>, GvError> {
    let h = x.hom_space(y)?;
    let mut v = vec![Q::from_i64(0); x.dim() * y.dim()];
    for l in 0..h.dim() {
        let c = Q::from_i64(rng.gen_range(-3..=3));
        for (slot, b) in v.iter_mut().zip(h.basis_vector(l)) {
            *slot = slot.add_ref(&c.mul_ref(&b));
        }
    }
    BimoduleMap::new(x.clone(), y.clone(), Matrix::from_vec(y.dim(), x.dim(), v)?)
}

fn paper_examples(seed: u64) -> Vec<Check> {
    vec![
        check("a2-tensor-facts", || {
            let c = Corpus::<Q>::dual_numbers()?;
            let (s, p) = (module(&c, "S")?, module(&c, "P")?);
            let ss = tensor_over(s, s)?;
            let sp = tensor_over(s, p)?;
            let iota = BimoduleMap::new(s.clone(), p.clone(), Matrix::column(vec![Q::from_i64(0), Q::from_i64(1)]))?;
            let s_iota = induced_map(&ss, &sp, &Matrix::identity(1), iota.matrix())?;
            let (d1, d2) = (ss.result().dim(), sp.result().dim());
            Ok((d1 == 1 && d2 == 1 && s_iota.is_zero(), json!({ "dim_s_s": d1, "dim_s_p": d2, "s_iota_zero": s_iota.is_zero() })))
        }),
        check("a3-socle-dichotomy", || {
            let c = Corpus::<Q>::a3()?;
            let (p, i) = (module(&c, "P")?, module(&c, "I")?);
            let (sp, si) = (p.socle_left()?.dim(), i.socle_left()?.dim());
            let iso = p.are_isomorphic(i, seed)?.is_isomorphic();
            Ok((sp == 2 && si == 1 && !iso, json!({ "socle_regular": sp, "socle_dual": si, "isomorphic": iso })))
        }),
        check("a3-dual-tensor-square", || {
            let c = Corpus::<Q>::a3()?;
            let i = module(&c, "I")?;
            let t = tensor_over(i, i)?.into_result();
            let trivial = (1..3).all(|k| t.left_action(k).is_zero() && t.right_action(k).is_zero());
            Ok((t.dim() == 4 && trivial, json!({ "dim": t.dim(), "radical_acts_as_zero": trivial })))
        }),
        check("a3-distributor-golden", golden_distributor),
        check("a2-vanishing-distributor", || {
            let c = Corpus::<Q>::dual_numbers()?;
            let (s, p) = (module(&c, "S")?, module(&c, "P")?);
            let d = distributor_left(s, p, s)?;
            Ok((d.map.is_zero(), json!({ "domain_dim": d.map.source().dim(), "codomain_dim": d.map.target().dim(), "zero": d.map.is_zero() })))
        }),
        check("internal-hom-two-paths", || {
            let mut pairs = 0;
            for c in corpora()? {
                for (_, n) in &c.modules {
                    for (_, x) in &c.modules {
                        let right = internal_hom_right(n, x)?.object.dim();
                        let left = internal_hom_left(n, x)?.object.dim();
                        let isos = [
                            internal_hom_right_vs_cotensor(n, x)?,
                            internal_hom_right_vs_dual(n, x)?,
                            internal_hom_left_vs_cotensor(n, x)?,
                            internal_hom_left_vs_dual(n, x)?,
                        ];
                        let dims_ok = isos[0].target().dim() == right && isos[2].target().dim() == left;
                        if !dims_ok || !isos.iter().all(|f| f.is_isomorphism()) {
                            return Ok((false, json!({ "algebra": c.algebra.name(), "failed_pair": [n.dim(), x.dim()] })));
                        }
                        pairs += 1;
                    }
                }
            }
            Ok((true, json!({ "pairs": pairs })))
        }),
        check("gv-axioms", || {
            let (mut pairs, mut maps) = (0, 0);
            for c in corpora()? {
                for (nx, x) in &c.modules {
                    if double_dual_map(x).target() != x || !double_dual_map(x).is_bimodule_map() {
                        return Ok((false, json!({ "double_dual_fails": nx })));
                    }
                    for (ny, y) in &c.modules {
                        if !varpi(x, y)?.is_bijection() || !second_tensor_comparison(x, y)?.is_isomorphism() {
                            return Ok((false, json!({ "pair": [nx, ny] })));
                        }
                        pairs += 1;
                        for f in hom_basis(y, x)? {
                            maps += 1;
                            if !varpi_natural_in_first(&f, y)? || !varpi_natural_in_second(y, &f)? {
                                return Ok((false, json!({ "naturality_fails": [nx, ny] })));
                            }
                        }
                    }
                }
            }
            Ok((true, json!({ "pairs": pairs, "generator_maps": maps })))
        }),
        check("strongness-examples", || {
            let a2 = Corpus::<Q>::dual_numbers()?;
            let a3 = Corpus::<Q>::a3()?;
            let reg = strongness_report(module(&a2, "P")?, &a2.modules)?;
            let dual_is_a = match right_dual(module(&a2, "P")?)? {
                Some(d) => d.dual.are_isomorphic(module(&a2, "P")?, seed)?.is_isomorphic(),
                None => false,
            };
            let s = strongness_report(module(&a2, "S")?, &a2.modules)?;
            let p = strongness_report(module(&a3, "P")?, &a3.modules)?;
            let i = strongness_report(module(&a3, "I")?, &a3.modules)?;
            let pass = reg.right.strong()
                && dual_is_a
                && s.consistent()
                && !s.right.projective.holds
                && s.right.distributor_iso.witness.is_some()
                && p.right.strong()
                && p.left.strong()
                && i.consistent()
                && !i.right.strong()
                && !i.left.strong();
            Ok((pass, json!({
                "a2_regular_strong": reg.right.strong(),
                "a2_right_dual_is_regular": dual_is_a,
                "a2_simple_witness": s.right.distributor_iso.witness,
                "a3_regular_strong": p.right.strong() && p.left.strong(),
                "a3_dual_strong": i.right.strong() || i.left.strong(),
                "a3_dual_witness": i.right.distributor_iso.witness,
            })))
        }),
        check("eilenberg-watts", || eilenberg_watts(seed)),
    ]
}

fn golden_distributor() -> CheckResult {
    let c = Corpus::<Q>::a3()?;
    let (p, i) = (module(&c, "P")?, module(&c, "I")?);
    let d = distributor_left(i, p, p)?;
    let (one, x, y) = (unit_vec(3, 0), unit_vec(3, 1), unit_vec(3, 2));
    let el = |a: &[Q], b: &[Q], c: &[Q]| d.domain_element(a, &kron_vec(b, c));
    let minus = |u: Vec<Q>, v: Vec<Q>| u.iter().zip(&v).map(|(a, b)| a.sub_ref(b)).collect::<Vec<_>>();
    let printed = vec![
        minus(el(&x, &x, &x)?, el(&y, &y, &x)?),
        minus(el(&x, &x, &y)?, el(&y, &y, &y)?),
        el(&x, &y, &x)?,
        el(&x, &y, &y)?,
        el(&y, &x, &x)?,
        el(&y, &x, &y)?,
    ];
    let in_kernel = printed.iter().all(|v| d.kernel.contains(v));
    let spans = Subspace::from_spanning_rows(d.map.source().dim(), printed) == d.kernel;
    let image = Subspace::from_spanning_rows(
        d.map.target().dim(),
        vec![d.codomain_element(&kron_vec(&one, &one), &x)?, d.codomain_element(&kron_vec(&one, &one), &y)?],
    );
    let pass = d.kernel.dim() == 6 && d.image.dim() == 2 && in_kernel && spans && image == d.image;
    Ok((pass, json!({
        "kernel_dim": d.kernel.dim(),
        "image_dim": d.image.dim(),
        "printed_vectors_in_kernel": in_kernel,
        "printed_vectors_span_kernel": spans,
        "printed_image_matches": image == d.image,
    })))
}

fn eilenberg_watts(seed: u64) -> CheckResult {
    let c = Corpus::<Q>::dual_numbers()?;
    let a = c.algebra.clone();
    let k = std::sync::Arc::new(gvbimod::Algebra::<Q>::ground_field());
    let incl = AlgebraMorphism::unit_inclusion(k.clone(), a.clone())?;
    let id = AlgebraMorphism::identity(a.clone());
    // right modules over A₂ are (k, A₂)-bimodules
    let right: Vec<QBimodule> = c.modules.iter().map(|(_, m)| m.twist_left(&incl)).collect::<Result<_, _>>()?;
    let kk = Bimodule::regular(k.clone());
    let mut instances = 0;
    for (phi, sources) in [(&incl, vec![kk.clone(), Bimodule::direct_sum(&[kk.clone(), kk])?]), (&id, right.clone())] {
        let h_on_unit = coinduce(phi, &Bimodule::regular(phi.source().clone()).dual())?;
        for m in &sources {
            let direct = coinduce_direct(phi, m)?;
            let ew = eilenberg_watts_left_exact(&h_on_unit, m)?;
            let agree = ew.are_isomorphic(&direct, seed)?.is_isomorphic() && coinduce(phi, m)?.are_isomorphic(&direct, seed)?.is_isomorphic();
            if !agree {
                return Ok((false, json!({ "coinduction_mismatch_dim": m.dim() })));
            }
            for n in &right {
                let ind = induction_adjunction_dims(phi, m, n)?;
                let coind = coinduction_adjunction_dims(phi, n, m)?;
                if !ind.agree() || !coind.agree() || induction_triangles(phi, m, n)? != (true, true) {
                    return Ok((false, json!({ "adjunction_fails": [ind, coind] })));
                }
                instances += 1;
            }
        }
    }
    let kk = Bimodule::regular(k);
    let dims = [induce(&incl, &kk)?.dim(), coinduce(&incl, &kk)?.dim()];
    Ok((dims == [2, 2], json!({ "instances": instances, "ground_field_ind_coind_dims": dims })))
}

fn coherence(seed: u64) -> Vec<Check> {
    vec![
        check("tilde-equals-plain", || {
            let mut triples = Vec::new();
            for c in corpora()? {
                for [i, j, k] in c.triples() {
                    for side in [Side::Left, Side::Right] {
                        tilde_variant(side, c.get(i), c.get(j), c.get(k))?;
                    }
                }
                triples.push(json!({ "algebra": c.algebra.name(), "triples": c.triples().len() }));
            }
            Ok((true, json!(triples)))
        }),
        check("pentagons", || {
            let mut count = 0;
            for c in corpora()? {
                for q in c.seeded_quadruples(seed, 30) {
                    for d in check_mixed_pentagons(c.get(q[0]), c.get(q[1]), c.get(q[2]), c.get(q[3]))? {
                        if !d.commutes {
                            let names: Vec<&str> = q.iter().map(|&i| c.name(i)).collect();
                            return Ok((false, json!({ "algebra": c.algebra.name(), "quadruple": names, "diagram": d })));
                        }
                    }
                    count += 1;
                }
            }
            Ok((true, json!({ "quadruples": count, "diagrams_per_quadruple": 6 })))
        }),
        check("triangles", || {
            let mut count = 0;
            for c in corpora()? {
                for i in 0..c.modules.len() {
                    for j in 0..c.modules.len() {
                        for d in check_triangles(c.get(i), c.get(j))? {
                            if !d.commutes {
                                return Ok((false, json!({ "pair": [c.name(i), c.name(j)], "diagram": d })));
                            }
                        }
                        count += 1;
                    }
                }
            }
            Ok((true, json!({ "pairs": count })))
        }),
        check("distributor-naturality", || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut count = 0;
            for c in corpora()? {
                let n = c.modules.len();
                for _ in 0..12 {
                    let idx: Vec<usize> = (0..6).map(|_| rng.gen_range(0..n)).collect();
                    let f = random_map(c.get(idx[0]), c.get(idx[1]), &mut rng)?;
                    let g = random_map(c.get(idx[2]), c.get(idx[3]), &mut rng)?;
                    let h = random_map(c.get(idx[4]), c.get(idx[5]), &mut rng)?;
                    for side in [Side::Left, Side::Right] {
                        let r = check_naturality(side, &f, &g, &h)?;
                        if !r.commutes {
                            return Ok((false, json!({ "side": side, "indices": idx, "diagram": r })));
                        }
                    }
                    count += 1;
                }
            }
            Ok((true, json!({ "random_triples_of_maps": count })))
        }),
        check("cotensor-is-equalizer", || {
            let mut count = 0;
            for c in corpora()? {
                for (_, x) in &c.modules {
                    for (_, y) in &c.modules {
                        let via_blocks = cotensor_over(x, y)?;
                        let via_map = gvbimod::tensor::cobalancing_map(x, y)?.kernel();
                        if via_blocks.subspace() != Some(&via_map) {
                            return Ok((false, json!({ "dims": [x.dim(), y.dim()] })));
                        }
                        count += 1;
                    }
                }
            }
            Ok((true, json!({ "pairs": count })))
        }),
    ]
}

fn flatness() -> Vec<Check> {
    vec![
        check("strongness-consistency", || {
            let mut rows = Vec::new();
            for c in corpora()? {
                for (name, m) in &c.modules {
                    let r = strongness_report(m, &c.modules)?;
                    let witnesses_present = [&r.right, &r.left].iter().all(|s| {
                        [&s.internal_hom_strong, &s.has_dual, &s.projective, &s.dual_injective, &s.distributor_iso]
                            .iter()
                            .all(|p| p.holds || p.witness.is_some())
                    });
                    if !r.consistent() || !witnesses_present {
                        return Ok((false, json!({ "algebra": c.algebra.name(), "module": name, "report": r })));
                    }
                    rows.push(json!({ "algebra": c.algebra.name(), "module": name, "strong_right": r.right.strong(), "strong_left": r.left.strong() }));
                }
            }
            Ok((true, json!(rows)))
        }),
        check("flatness-implications", || {
            let mut hypotheses = [0usize; 4];
            for c in corpora()? {
                let probe = FlatnessProbe::new(c.sequences.clone());
                for [i, j, k] in c.triples() {
                    for imp in probe.implications(c.get(i), c.get(j), c.get(k))? {
                        if !imp.holds {
                            let names = [c.name(i), c.name(j), c.name(k)];
                            return Ok((false, json!({ "algebra": c.algebra.name(), "triple": names, "implication": imp })));
                        }
                        hypotheses[imp.item as usize - 1] += imp.hypothesis as usize;
                    }
                }
            }
            Ok((hypotheses.iter().all(|&h| h > 0), json!({ "instances_with_hypothesis": hypotheses })))
        }),
        check("a3-projective-injective-dichotomy", || {
            let c = Corpus::<Q>::a3()?;
            let probe = FlatnessProbe::new(c.sequences.clone());
            let (p, i) = (probe.profile(module(&c, "P")?)?, probe.profile(module(&c, "I")?)?);
            let pass = p.tensor_left.holds
                && p.tensor_right.holds
                && !p.cotensor_left.holds
                && !p.cotensor_right.holds
                && !i.tensor_left.holds
                && !i.tensor_right.holds
                && i.cotensor_left.holds
                && i.cotensor_right.holds;
            Ok((pass, json!({ "P": p, "I": i })))
        }),
    ]
}
