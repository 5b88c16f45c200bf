use super::*;
use crate::algebra::Property;
use crate::constructions::{lukasiewicz, ordinal_sum, trivial, two};
use crate::identity::{check_identity, parse_identity};
use crate::morphism::is_isomorphic;

fn opts(max: usize) -> SearchOptions {
    SearchOptions::new(max)
}

fn assert_sound(vf: &VFormation, r: &SearchReport) {
    let Verdict::Found { d, h, k, .. } = &r.verdict else {
        return;
    };
    let mut props = vec![Property::Lattice, Property::Monoid, Property::Residuation, Property::Chain];
    if r.flags.commutative {
        props.push(Property::Commutative);
    }
    if r.flags.integral {
        props.push(Property::Integral);
    }
    if r.flags.pointed {
        props.push(Property::ZeroBounded);
    }
    assert!(d.validate(&props).passed(), "{:?}", d.validate(&props).first_failure());
    assert!(h.is_valid(&vf.b, d), "{:?}", h.violation(&vf.b, d));
    assert!(k.is_valid(&vf.c, d), "{:?}", k.violation(&vf.c, d));
    assert_eq!(k.kind, MorphKind::Embedding);
    for a in vf.a.elements() {
        assert_eq!(h.map[vf.i.map[a]], k.map[vf.j.map[a]]);
    }
}

fn corpus() -> Vec<VFormation> {
    let (t, l3, l4) = (trivial(), lukasiewicz(3), lukasiewicz(4));
    vec![
        vs(),
        vs_pointed(),
        VFormation::doubled(vs_a(), vs_b(), vec![0, 2, 3]),
        VFormation::new(t.clone(), l3.clone(), l3.clone(), vec![2], vec![2]),
        VFormation::new(t.clone(), two(), l4.clone(), vec![1], vec![3]),
        VFormation::new(two(), l3.clone(), vs_a(), vec![0, 2], vec![0, 2]),
        VFormation::new(two(), vs_b(), vs_c(), vec![0, 3], vec![0, 4]),
        builtin_formation("VS^const-1:2").unwrap(),
    ]
}

#[test]
fn vs_formation_is_valid() {
    assert!(check_vformation(&vs()).passed());
    let bad = VFormation::new(vs_a(), vs_b(), vs_c(), vec![0, 1, 3], vec![0, 3, 4]);
    let r = check_vformation(&bad);
    let f = r.first_failure().unwrap();
    assert_eq!(f.name, "i");
    let t = trivial();
    assert!(check_vformation(&VFormation::new(t.clone(), vs_b(), lukasiewicz(4), vec![3], vec![3])).passed());
}

#[test]
fn vformation_documents() {
    let vf = parse_vformation(r#"{"A": "VS.A", "B": "VS.B", "C": "VS.C", "i": [0, 2, 3], "j": [0, 3, 4]}"#).unwrap();
    assert_eq!(vf, vs());
    let doc = crate::doc::to_json(&vs_a());
    let text = format!(r#"{{"A": {doc}, "B": "VS.B", "C": "VS.C", "i": [0, 2, 3], "j": [0, 3, 4]}}"#);
    assert!(parse_vformation(&text).unwrap().a.tables_eq(&vs_a()));
    assert!(matches!(parse_vformation(r#"{"A": "VS.A"}"#), Err(Error::Format(_))));
    assert!(matches!(
        parse_vformation(r#"{"A": "VS.A", "B": "VS.B", "C": "VS.C", "i": [0, 2], "j": [0, 3, 4]}"#),
        Err(Error::Format(_))
    ));
    assert!(matches!(builtin_formation("VS^half:2"), Err(Error::UnknownBuiltin(_))));
}

#[test]
fn vs_witness() {
    let w = find_obstruction(&vs()).unwrap().unwrap();
    assert_eq!(w, ObstructionWitness { a: 1, b: 1, c: 2, u1: 0, u2: 0, side: Side::Left });
    let ObstructionOutcome::Trace(lines) = check_obstruction(&vs(), &w).unwrap() else {
        panic!("witness rejected");
    };
    assert!(lines.iter().any(|l| l.contains("k(c) ≤ h(b)\\h(i(u1)) = h(b\\u) ≤ h(b)")));
    assert!(lines.iter().any(|l| l.contains("h(b) ≤ k(c)\\k(j(u2)) = k(c\\u) ≤ k(c)")));
}

#[test]
fn witness_rejections() {
    let vf = vs();
    let w = ObstructionWitness { a: 1, b: 1, c: 2, u1: 1, u2: 0, side: Side::Left };
    assert_eq!(
        check_obstruction(&vf, &w).unwrap(),
        ObstructionOutcome::Reject { clause: "W2".into(), detail: "b\\v = 1 ≰ b".into() }
    );
    let w = ObstructionWitness { a: 1, b: 2, c: 2, u1: 0, u2: 0, side: Side::Left };
    assert!(matches!(check_obstruction(&vf, &w).unwrap(), ObstructionOutcome::Reject { clause, .. } if clause == "W1 domain"));
    let w = ObstructionWitness { a: 1, b: 1, c: 1, u1: 0, u2: 0, side: Side::Left };
    assert!(matches!(check_obstruction(&vf, &w).unwrap(), ObstructionOutcome::Reject { clause, .. } if clause == "W1"));
    let w = ObstructionWitness { a: 9, b: 1, c: 2, u1: 0, u2: 0, side: Side::Left };
    assert!(matches!(check_obstruction(&vf, &w), Err(Error::Format(_))));
}

#[test]
fn no_witness_when_an_amalgam_exists() {
    let vf = VFormation::doubled(vs_a(), vs_b(), vec![0, 2, 3]);
    assert_eq!(find_obstruction(&vf).unwrap(), None);
}

#[test]
fn rotated_witnesses() {
    for name in ["VS^const-1:2", "VS^identity:2"] {
        let vf = builtin_formation(name).unwrap();
        assert!(check_vformation(&vf).passed(), "{name}");
        let w = find_obstruction(&vf).unwrap().expect(name);
        assert!(check_obstruction(&vf, &w).unwrap().is_certified());
    }
}

#[test]
fn injectivity() {
    assert_eq!(injectivity_reduction(&vs()), vec![1]);
    let t = trivial();
    assert!(injectivity_reduction(&VFormation::new(t.clone(), two(), two(), vec![1], vec![1])).is_empty());
    assert!(!injectivity_reduction(&builtin_formation("VS^identity:2").unwrap()).is_empty());
}

#[test]
fn doubled_formation_amalgamates_into_b() {
    let vf = VFormation::doubled(vs_a(), vs_b(), vec![0, 2, 3]);
    let r = bounded_amalgam_search(&vf, &opts(4)).unwrap();
    let Verdict::Found { d, h, k, .. } = &r.verdict else { panic!("{r:?}") };
    assert!(d.tables_eq(&vs_b()));
    assert_eq!(h.map, vec![0, 1, 2, 3]);
    assert_eq!(k.map, vec![0, 1, 2, 3]);
    let r = bounded_one_amalgam_search(&vf, &opts(4)).unwrap();
    let Verdict::Found { d, filter, .. } = &r.verdict else { panic!() };
    assert!(d.tables_eq(&vs_b()));
    assert_eq!(filter.as_deref(), Some(&[3][..]));
}

#[test]
fn lukasiewicz_pair_over_trivial() {
    let l3 = lukasiewicz(3);
    let vf = VFormation::new(trivial(), l3.clone(), l3.clone(), vec![2], vec![2]);
    // disjoint images only: the first amalgam has five elements
    let r = bounded_amalgam_search(&vf, &SearchOptions { identify: false, ..opts(5) }).unwrap();
    assert_sound(&vf, &r);
    let Verdict::Found { d, .. } = &r.verdict else { panic!() };
    assert!(is_isomorphic(d, &ordinal_sum(&l3, &l3).unwrap()));
    // the disjoint phase comes first, so the default search agrees at bound 5
    let r = bounded_amalgam_search(&vf, &opts(5)).unwrap();
    let Verdict::Found { d, .. } = &r.verdict else { panic!() };
    assert_eq!(d.size(), 5);
    // below that bound only shared images fit, and Ł3 itself is an amalgam
    let r = bounded_amalgam_search(&vf, &opts(4)).unwrap();
    assert_sound(&vf, &r);
    let Verdict::Found { d, h, k, .. } = &r.verdict else { panic!() };
    assert!(d.tables_eq(&l3));
    assert_eq!((h.map.clone(), k.map.clone()), (vec![0, 1, 2], vec![0, 1, 2]));
}

#[test]
fn vs_has_no_small_amalgam() {
    for max in [5, 6, 7] {
        let r = bounded_amalgam_search(&vs(), &opts(max)).unwrap();
        assert_eq!(r.verdict, Verdict::Unsat { bound: max });
    }
    let r = bounded_amalgam_search(&vs(), &SearchOptions { identify: false, ..opts(5) }).unwrap();
    assert!(r.sizes_tried().is_empty());
}

#[test]
fn searches_are_sound_on_the_corpus() {
    for vf in corpus() {
        assert!(check_vformation(&vf).passed());
        let witness = find_obstruction(&vf).unwrap();
        let r = bounded_amalgam_search(&vf, &opts(7)).unwrap();
        assert_sound(&vf, &r);
        if witness.is_some() {
            assert!(!r.found());
        }
        let one = bounded_one_amalgam_search(&vf, &opts(7)).unwrap();
        if let Verdict::Found { d, h, k, .. } = &one.verdict {
            assert!(h.is_valid(&vf.b, d) && k.is_valid(&vf.c, d));
        }
        // amalgam FOUND implies one-amalgam FOUND with the same D
        if let (Verdict::Found { d, .. }, Verdict::Found { d: d1, .. }) = (&r.verdict, &one.verdict) {
            assert!(d.tables_eq(d1));
        }
        assert_eq!(r.found() && !one.found(), false);
    }
}

#[test]
fn flags_narrow_the_class() {
    let l3 = lukasiewicz(3);
    let vf = VFormation::new(trivial(), l3.clone(), two(), vec![2], vec![1]);
    let flags = ClassFlags { commutative: true, integral: true, pointed: false };
    let r = bounded_amalgam_search(&vf, &opts(5).with_flags(flags)).unwrap();
    assert_sound(&vf, &r);
    let Verdict::Found { d, .. } = &r.verdict else { panic!() };
    assert!(d.is_integral() && d.is_commutative());
    assert!(check_identity(d, &parse_identity("prel").unwrap()).unwrap().holds());
}

#[test]
fn pointed_mode_is_automatic() {
    let r = bounded_amalgam_search(&vs_pointed(), &opts(6)).unwrap();
    assert!(r.flags.pointed);
    assert_eq!(r.verdict, Verdict::Unsat { bound: 6 });
}

#[test]
fn core_counts() {
    // b against d < c: three interleavings, two identifications
    assert_eq!(search::placement_count(&vs(), false), 3);
    assert_eq!(search::placement_count(&vs(), true), 5);
}

/// Exists a chain `D` of size at most `max` with embeddings agreeing on `A`?
fn brute_amalgam(vf: &VFormation, max: usize) -> bool {
    use crate::enumeration::{enumerate_chains, ChainFlags};
    use crate::morphism::find_embeddings;
    (1..=max).any(|m| {
        enumerate_chains(m, ChainFlags::default()).unwrap().iter().any(|d| {
            let ks = find_embeddings(&vf.c, d, &[]);
            find_embeddings(&vf.b, d, &[]).iter().any(|h| {
                ks.iter().any(|k| vf.a.elements().all(|a| h.map[vf.i.map[a]] == k.map[vf.j.map[a]]))
            })
        })
    })
}

#[test]
fn search_agrees_with_brute_force() {
    use crate::enumeration::{enumerate_chains, ChainFlags};
    use crate::morphism::find_embeddings;
    let small: Vec<FiniteRL> =
        (1..=3).flat_map(|n| enumerate_chains(n, ChainFlags::default()).unwrap()).collect();
    let mut checked = 0;
    for a in [trivial(), two()] {
        for b in &small {
            for c in &small {
                let (Some(i), Some(j)) = (find_embeddings(&a, b, &[]).pop(), find_embeddings(&a, c, &[]).pop()) else {
                    continue;
                };
                let vf = VFormation { a: a.clone(), b: b.clone(), c: c.clone(), i, j };
                let r = bounded_amalgam_search(&vf, &opts(4)).unwrap();
                assert_sound(&vf, &r);
                assert_eq!(r.found(), brute_amalgam(&vf, 4), "{} {} {}", a.name(), b.name(), c.name());
                checked += 1;
            }
        }
    }
    assert!(checked > 20);
}
