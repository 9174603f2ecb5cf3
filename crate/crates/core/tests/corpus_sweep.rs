use gvbimod::corpus::Corpus;
use gvbimod::diagnostics::{strongness_report, FlatnessProbe};
use gvbimod::distributor::{check_mixed_pentagons, check_triangles, tilde_variant, Side};
use gvbimod::Rational;

fn corpora() -> Vec<Corpus<Rational>> {
    vec![Corpus::dual_numbers().unwrap(), Corpus::a3().unwrap()]
}

#[test]
fn tilde_equals_plain_on_all_triples() {
    for c in corpora() {
        for [i, j, k] in c.triples() {
            for side in [Side::Left, Side::Right] {
                tilde_variant(side, c.get(i), c.get(j), c.get(k)).unwrap();
            }
        }
    }
}

#[test]
fn pentagons_on_seeded_quadruples() {
    for c in corpora() {
        for q in c.seeded_quadruples(11, 30) {
            for d in check_mixed_pentagons(c.get(q[0]), c.get(q[1]), c.get(q[2]), c.get(q[3])).unwrap() {
                assert!(d.commutes, "{} on {:?}: {:?}", d.name, q, d.counterexample);
            }
        }
    }
}

#[test]
fn triangles_on_all_pairs() {
    for c in corpora() {
        for i in 0..c.modules.len() {
            for j in 0..c.modules.len() {
                for d in check_triangles(c.get(i), c.get(j)).unwrap() {
                    assert!(d.commutes, "{} on ({}, {})", d.name, c.name(i), c.name(j));
                }
            }
        }
    }
}

#[test]
fn strongness_is_consistent() {
    for c in corpora() {
        for (name, m) in &c.modules {
            let r = strongness_report(m, &c.modules).unwrap();
            assert!(r.consistent(), "{name}: {r:?}");
        }
    }
}

#[test]
fn flatness_implications_hold() {
    for c in corpora() {
        let probe = FlatnessProbe::new(c.sequences.clone());
        for [i, j, k] in c.triples() {
            for imp in probe.implications(c.get(i), c.get(j), c.get(k)).unwrap() {
                assert!(imp.holds, "item {} on ({}, {}, {})", imp.item, c.name(i), c.name(j), c.name(k));
            }
        }
    }
}
