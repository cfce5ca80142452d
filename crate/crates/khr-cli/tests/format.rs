use khr::fractions::build_localization;
use khr::quotients::build_quotient;
use khr::{ElemSet, Structure, ValidationMode};
use khr_cli::format::{
    parse_structure, serialize_localization, serialize_quotient, serialize_structure,
};
use khr_cli::generate::generate_ring_embedding;

fn mask(xs: &[usize]) -> ElemSet {
    xs.iter().copied().collect()
}

const Z2: &str = "\
khr 1
name Z2
m 2 n 2 card 2
zero 0 one 1
flags commutative
f 0 0 : 0
f 0 1 : 1
f 1 1 : 0
g * * : 0
g 1 1 : 1
";

#[test]
fn parses_with_commutative_closure_and_wildcards() {
    let file = parse_structure(Z2).unwrap();
    assert_eq!(file.raw.name, "Z2");
    assert_eq!(file.raw.card, 2);
    assert!(file.raw.commutative);
    // f 0 1 filled both orders by the commutative flag
    assert_eq!(file.raw.f_entry(&[1, 0]), mask(&[1]));
    // specific g 1 1 entry overrides the wildcard
    assert_eq!(file.raw.g_entry(&[1, 1]), 1);
    assert_eq!(file.raw.g_entry(&[0, 1]), 0);
    let s = Structure::from_raw(file.raw, ValidationMode::Strict).unwrap();
    assert_eq!(s.card(), 2);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let cases: &[(&str, &str)] = &[
        ("krh 1\n", "line 1: bad magic"),
        ("khr 2\n", "line 1: unsupported version"),
        (
            "khr 1\nname x\nm 2 n 2 card 2\nzero 0 one 1\nf 0 : 0\n",
            "line 5: arity mismatch",
        ),
        (
            "khr 1\nname x\nm 2 n 2 card 2\nzero 0 one 1\nf 0 0 0\n",
            "line 5: missing `:`",
        ),
        (
            "khr 1\nname x\nm 2 n 2 card 2\nzero 0 one 1\ng 0 0 : 1 2\n",
            "line 5: `g` entries take exactly one value",
        ),
        (
            "khr 1\nname x\nm 2 n 2 card 2\nzero 0 one 1\nwat 1\n",
            "line 5: unknown directive",
        ),
    ];
    for (text, expected) in cases {
        let err = parse_structure(text).unwrap_err().to_string();
        assert!(
            err.starts_with(expected),
            "`{err}` does not start with `{expected}`"
        );
    }
}

#[test]
fn missing_entry_names_the_tuple() {
    let text =
        "khr 1\nname x\nm 2 n 2 card 2\nzero 0 one 1\nf 0 0 : 0\nf 0 1 : 1\nf 1 1 : 0\ng * * : 0\n";
    let err = parse_structure(text).unwrap_err().to_string();
    assert!(
        err.contains("`f` table is not total: no entry for (1,0)"),
        "{err}"
    );
}

#[test]
fn conflicting_entries_name_both_lines() {
    let text =
        "khr 1\nname x\nm 2 n 2 card 2\nzero 0 one 1\nf * * : 0\nf 0 0 : 0\nf 0 0 : 1\ng * * : 0\n";
    let err = parse_structure(text).unwrap_err().to_string();
    assert!(err.contains("conflicting `f` entries for (0,0)"), "{err}");
    assert!(err.contains("line 6") && err.contains("line 7"), "{err}");
}

#[test]
fn specific_entries_override_wildcards_regardless_of_order() {
    let a = parse_structure("khr 1\nname x\nm 2 n 2 card 2\nzero 0 one 1\ng 1 1 : 1\ng * * : 0\nf * * : 0\nf 0 1 : 1\nf 1 0 : 1\nf 1 1 : 0\n").unwrap();
    let b = parse_structure("khr 1\nname x\nm 2 n 2 card 2\nzero 0 one 1\ng * * : 0\ng 1 1 : 1\nf 0 1 : 1\nf 1 0 : 1\nf 1 1 : 0\nf * * : 0\n").unwrap();
    assert_eq!(a.raw.g_entry(&[1, 1]), 1);
    assert_eq!(a.raw, b.raw);
}

#[test]
fn shipped_paper_file_parses_to_the_printed_tables() {
    let text = include_str!("../data/paper_33.khr");
    let file = parse_structure(text).unwrap();
    let raw = &file.raw;
    assert_eq!((raw.arity.m, raw.arity.n, raw.card), (3, 3, 3));
    assert_eq!((raw.zero, raw.one), (0, 1));
    assert!(raw.commutative);
    assert_eq!(raw.f_entry(&[1, 1, 2]), mask(&[0, 1, 2]));
    assert_eq!(raw.f_entry(&[0, 1, 2]), mask(&[0, 1, 2]));
    assert_eq!(raw.f_entry(&[0, 0, 1]), mask(&[1]));
    assert_eq!(raw.f_entry(&[2, 2, 2]), mask(&[2]));
    assert_eq!(raw.g_entry(&[1, 1, 1]), 1);
    assert_eq!(raw.g_entry(&[1, 2, 2]), 2);
    // the wildcard line g 0 * * : 0 with commutative closure zeroes
    // every product containing 0
    assert_eq!(raw.g_entry(&[1, 0, 2]), 0);
    assert_eq!(raw.g_entry(&[2, 2, 0]), 0);
}

#[test]
fn roundtrip_is_byte_stable() {
    let s = generate_ring_embedding(6).unwrap();
    let text = serialize_structure(&s);
    let reparsed = parse_structure(&text).unwrap();
    assert_eq!(reparsed.raw, s.to_raw());
    assert_eq!(
        serialize_structure(&Structure::from_raw(reparsed.raw, ValidationMode::Strict).unwrap()),
        text
    );
}

#[test]
fn localization_sidecar_roundtrip() {
    let s = generate_ring_embedding(6).unwrap();
    let l = build_localization(&s, mask(&[1, 3, 5])).unwrap();
    let text = serialize_localization(&l);
    let file = parse_structure(&text).unwrap();
    assert_eq!(file.raw, l.structure().to_raw());
    let classes = file.classes.unwrap();
    assert_eq!(classes.len(), 2);
    assert_eq!(classes[0][0], (0, 1));
    assert!(file.cosets.is_none());
}

#[test]
fn quotient_sidecar_roundtrip() {
    let s = generate_ring_embedding(6).unwrap();
    let q = build_quotient(&s, mask(&[0, 3])).unwrap();
    let text = serialize_quotient(&q);
    let file = parse_structure(&text).unwrap();
    assert_eq!(file.raw, q.structure().to_raw());
    assert_eq!(
        file.cosets.unwrap(),
        vec![vec![0, 3], vec![1, 4], vec![2, 5]]
    );
}

mod roundtrip_props {
    use super::*;
    use khr::{ArityProfile, RawStructure};
    use proptest::prelude::*;

    /// Z_k with a random relabeling: enough variety to exercise the whole
    /// grammar (any zero/one position, any table content).
    fn relabeled(k: usize, ranks: &[u64]) -> Structure {
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&i| (ranks[i], i));
        let mut perm = vec![0; k];
        for (rank, &elem) in order.iter().enumerate() {
            perm[elem] = rank;
        }
        let arity = ArityProfile::new(2, 2).unwrap();
        let mut f = vec![ElemSet::EMPTY; k * k];
        let mut g = vec![0; k * k];
        for a in 0..k {
            for b in 0..k {
                f[perm[a] * k + perm[b]] = ElemSet::singleton(perm[(a + b) % k]);
                g[perm[a] * k + perm[b]] = perm[a * b % k];
            }
        }
        let raw = RawStructure::new(
            format!("Z{k}r"),
            k,
            arity,
            true,
            perm[0],
            perm[1 % k],
            f,
            g,
            None,
        )
        .unwrap();
        Structure::from_raw(raw, ValidationMode::Strict).unwrap()
    }

    proptest! {
        #[test]
        fn parse_serialize_roundtrip(
            k in 2usize..=8,
            ranks in proptest::collection::vec(any::<u64>(), 8),
        ) {
            let s = relabeled(k, &ranks);
            let text = serialize_structure(&s);
            let file = parse_structure(&text).unwrap();
            prop_assert_eq!(&file.raw, &s.to_raw());
            let again = Structure::from_raw(file.raw, ValidationMode::Strict).unwrap();
            prop_assert_eq!(serialize_structure(&again), text);
        }
    }
}
