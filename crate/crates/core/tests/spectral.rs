use semistable::fixtures::{self, fixture};
use semistable::wss::{
    build_e1, check_abutment, check_wm_symmetry, compute_e2, d1_squares_to_zero, monodromy_index, SpectralPage,
};

fn e2(name: &str) -> SpectralPage {
    let f = fixture(name, None).unwrap();
    compute_e2(&build_e1(&f.config, &f.transfers).unwrap()).unwrap()
}

fn cover_index(name: &str) -> usize {
    let m = fixture(name, None).unwrap().cover.unwrap();
    monodromy_index(&compute_e2(&build_e1(&m.total, &m.total_transfers).unwrap()).unwrap())
}

/// `dim H^n` read off the page.
fn abutment(p: &SpectralPage, n: i32) -> usize {
    (-2..=2).map(|s| p.dim(s, n - s)).sum()
}

#[test]
fn k3_tetrahedron_terms() {
    let p = e2("k3_tetrahedron");
    assert_eq!(p.dim(2, 0), 1);
    assert_eq!(p.dim(0, 2), 20);
    assert_eq!(p.dim(-2, 4), 1);
    assert_eq!(abutment(&p, 2), 22);
    assert_eq!(monodromy_index(&p), 3);
}

#[test]
fn csaszar_torus_terms() {
    let p = e2("abelian_csaszar");
    assert_eq!(p.dim(-1, 2), 2);
    assert_eq!(p.dim(0, 2), 4);
    assert_eq!((0..5).map(|n| abutment(&p, n)).collect::<Vec<_>>(), vec![1, 4, 6, 4, 1]);
}

#[test]
fn grid_torus_matches_csaszar() {
    assert_eq!(e2("abelian_grid").dims, e2("abelian_csaszar").dims);
    assert_eq!(e2("k3_icosahedron").dims, e2("k3_tetrahedron").dims);
}

#[test]
fn enriques_terms() {
    for name in ["enriques_rp2", "enriques_chain"] {
        let p = e2(name);
        assert_eq!(p.dim(0, 2), 10, "{name}");
        assert_eq!(p.dim(1, 1), 0, "{name}");
        assert_eq!((0..5).map(|n| abutment(&p, n)).collect::<Vec<_>>(), vec![1, 0, 10, 0, 1]);
    }
    assert_eq!(cover_index("enriques_rp2"), 3);
    assert_eq!(cover_index("enriques_chain"), 2);
}

#[test]
fn bielliptic_terms() {
    let klein = e2("bielliptic_klein");
    assert_eq!(klein.dim(0, 2), 2);
    assert_eq!(abutment(&klein, 1), 2);
    for name in ["bielliptic_klein", "bielliptic_chain", "bielliptic_cycle"] {
        let p = e2(name);
        assert_eq!((0..5).map(|n| abutment(&p, n)).collect::<Vec<_>>(), vec![1, 2, 2, 2, 1], "{name}");
    }
    assert_eq!(cover_index("bielliptic_klein"), 3);
    assert_eq!(cover_index("bielliptic_chain"), 2);
    assert_eq!(cover_index("bielliptic_cycle"), 2);
}

#[test]
fn k3_chain_terms() {
    let p = e2("k3_chain");
    assert_eq!(p.dim(1, 1), 2);
    assert_eq!(p.dim(0, 2), 18);
    assert_eq!(monodromy_index(&p), 2);
}

#[test]
fn abelian_cycle_terms() {
    let p = e2("abelian_cycle");
    assert_eq!(p.dim(-1, 2), 1);
    assert_eq!(p.dim(0, 1), 2);
    assert_eq!(p.dim(0, 2), 2);
    assert_eq!(monodromy_index(&p), 2);
}

#[test]
fn every_fixture_is_consistent() {
    for name in fixtures::NAMES {
        let f = fixture(name, None).unwrap();
        let e1 = build_e1(&f.config, &f.transfers).unwrap();
        assert!(d1_squares_to_zero(&e1), "{name}");
        let p = compute_e2(&e1).unwrap();
        assert!(p.incomplete_rows.is_empty(), "{name}");
        for w in 0..=4 {
            assert!(check_wm_symmetry(&p, w).passed(), "{name} w={w}");
        }
        if *name != "abelian_chain_bad" {
            let b = f.config.surface_class().betti();
            assert!(check_abutment(&p, &b, false).passed(), "{name}");
        }
    }
}

#[test]
fn lengths_do_not_change_e2() {
    for n in 2..7 {
        for (name, gen) in [
            ("k3", fixtures::k3_chain as fn(usize) -> _),
            ("abelian", fixtures::abelian_cycle),
            ("enriques", fixtures::enriques_chain),
            ("bielliptic", fixtures::bielliptic_chain),
        ] {
            let c = gen(n).unwrap();
            let p = compute_e2(&build_e1(&c, &Default::default()).unwrap()).unwrap();
            let b = c.surface_class().betti();
            assert!(check_abutment(&p, &b, false).passed(), "{name} {n}");
        }
    }
}
