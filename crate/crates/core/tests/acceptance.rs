//! One line per acceptance criterion. Run with `--nocapture` to see them.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semistable::cohss::{check_chi_flatness, coherent_cohomology};
use semistable::covers::{check_type_transfer, monodromy_index_via_cover, validate_cover};
use semistable::cy3::{classify_cy4, cone_structure, e2_30};
use semistable::dcomplex::{classify_surface, DeltaComplex, SurfaceClass};
use semistable::exactla::{nilpotency_index, rank, smith_normal_form, wedge_square};
use semistable::fixtures::{self, fixture, Fixture, NAMES};
use semistable::neron::{monodromy_on_h1, type_from_operator, type_from_rank, UniformizationDatum};
use semistable::sncl::{dual_graph, DegenerationType};
use semistable::wss::{build_e1, compute_e2, SpectralPage};
use semistable::{IntMatrix, QMatrix};

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn page(f: &Fixture) -> SpectralPage {
    compute_e2(&build_e1(&f.config, &f.transfers).unwrap()).unwrap()
}

fn abutment(p: &SpectralPage, n: i32) -> usize {
    (-2..=2).map(|s| p.dim(s, n - s)).sum()
}

fn index(f: &Fixture) -> Option<usize> {
    monodromy_index_via_cover(&f.config, &f.transfers, f.cover.as_ref()).unwrap().index
}

fn gamma(f: &Fixture) -> SurfaceClass {
    classify_surface(&dual_graph(&f.config).unwrap())
}

fn coherent_h(f: &Fixture) -> [usize; 3] {
    coherent_cohomology(&f.config, &f.transfers, 0).unwrap().h
}

fn k3_chain() -> Check {
    for n in 2..=6 {
        let f = fixture("k3_chain", Some(n)).unwrap();
        let p = page(&f);
        let got = (p.dim(1, 1), p.dim(2, 0), index(&f));
        ensure(got == (2, 0, Some(2)), || format!("N={n}: (E2^11, E2^20, index) = {got:?}"))?;
    }
    Ok(())
}

fn k3_tetrahedron_and_type_one() -> Check {
    let f = fixture("k3_tetrahedron", None).unwrap();
    let g = dual_graph(&f.config).unwrap();
    let got = (page(&f).dim(2, 0), g.homology(0).unwrap()[2], index(&f));
    ensure(got == (1, 1, Some(3)), || format!("(E2^20, b2(Γ), index) = {got:?}"))?;
    let i = index(&fixture("k3_type1", None).unwrap());
    ensure(i == Some(1), || format!("Type I index {i:?}"))
}

fn abelian_cycle() -> Check {
    for n in 2..=6 {
        let f = fixture("abelian_cycle", Some(n)).unwrap();
        let p = page(&f);
        let got = (p.dim(0, 1), p.dim(1, 0), p.dim(-1, 2), abutment(&p, 1), index(&f));
        ensure(got == (2, 1, 1, 4, Some(2)), || {
            format!("N={n}: (E2^01, E2^10, E2^-12, H1, index) = {got:?}")
        })?;
    }
    Ok(())
}

fn csaszar() -> Check {
    let f = fixture("abelian_csaszar", None).unwrap();
    let got = (gamma(&f), coherent_h(&f), check_chi_flatness(&f.config).chi, index(&f));
    ensure(got == (SurfaceClass::Torus, [1, 2, 1], 0, Some(3)), || format!("{got:?}"))
}

fn abelian_chain() -> Check {
    let f = fixture("abelian_chain_bad", None).unwrap();
    let h1 = coherent_h(&f)[1];
    ensure(h1 == 1, || format!("h1 = {h1}"))
}

fn enriques_rp2() -> Check {
    let f = fixture("enriques_rp2", None).unwrap();
    let g = dual_graph(&f.config).unwrap();
    let got = (
        gamma(&f),
        g.homology(0).unwrap(),
        g.homology(2).unwrap(),
        coherent_h(&f),
        check_chi_flatness(&f.config).chi,
    );
    let want = (SurfaceClass::RealProjectivePlane, vec![1, 0, 0], vec![1, 1, 1], [1, 0, 0], 1);
    ensure(got == want, || format!("{got:?}"))
}

fn bielliptic_klein() -> Check {
    let f = fixture("bielliptic_klein", None).unwrap();
    let h1 = dual_graph(&f.config).unwrap().integer_homology()[1].clone();
    let got = (gamma(&f), coherent_h(&f), check_chi_flatness(&f.config).chi, h1.torsion.clone());
    let want = (SurfaceClass::KleinBottle, [1, 1, 0], 0, vec![BigInt::from(2)]);
    ensure(got == want, || format!("{got:?}"))
}

fn unimodular(rng: &mut ChaCha8Rng, dim: usize) -> QMatrix {
    let mut p = IntMatrix::identity(dim);
    for _ in 0..12 {
        let (i, j) = (rng.gen_range(0..dim), rng.gen_range(0..dim));
        if i == j {
            p.negate_row(i);
        } else {
            p.add_row_multiple(i, j, &BigInt::from(rng.gen_range(-3i64..=3)));
        }
    }
    p.to_rational()
}

fn neron() -> Check {
    let types = [DegenerationType::I, DegenerationType::II, DegenerationType::III];
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for r in 0..=2 {
        let d = UniformizationDatum::new(r).unwrap();
        let n = monodromy_on_h1(d);
        let idx = nilpotency_index(&wedge_square(&n)).unwrap();
        let got = (type_from_rank(d), type_from_operator(&n).unwrap(), idx);
        ensure(got == (types[r], types[r], r + 1), || format!("rank {r}: {got:?}"))?;
        for trial in 0..200 {
            let p = unimodular(&mut rng, 4);
            let m = n.conjugate(&p).unwrap();
            let i = nilpotency_index(&wedge_square(&m)).unwrap();
            ensure(i == idx && type_from_operator(&m).unwrap() == types[r], || {
                format!("rank {r}, trial {trial}: index {i}")
            })?;
        }
    }
    ensure(UniformizationDatum::new(3).is_err(), || "rank 3 accepted".into())
}

fn covers() -> Check {
    for name in ["enriques_rp2", "enriques_chain", "bielliptic_klein", "bielliptic_chain", "bielliptic_cycle"] {
        let m = fixture(name, None).unwrap().cover.unwrap();
        let v = validate_cover(&m);
        ensure(v.passed(), || format!("{name}: {:?}", v.violations))?;
        ensure(check_type_transfer(&m).equal, || format!("{name}: types differ"))?;
    }
    Ok(())
}

fn cy3() -> Check {
    let s = fixtures::cy3_simplex_boundary();
    let v = classify_cy4(&s);
    let cert = v.homology.as_ref().is_some_and(|h| h.is_homology_sphere);
    ensure(v.type_iv && cert, || format!("boundary of the 4-simplex: {:?}", v.failures))?;
    let e = e2_30(&s).unwrap();
    ensure(e == 1, || format!("e2_30 = {e}"))?;
    let t = fixtures::cy3_three_torus();
    let v = classify_cy4(&t);
    let h1 = v.homology.as_ref().map(|h| h.h1.clone());
    ensure(!v.type_iv && h1.as_ref().is_some_and(|h| h.rank == 3 && h.torsion.is_empty()), || {
        format!("3-torus: type_iv {}, H1 {h1:?}", v.type_iv)
    })?;
    for (name, c) in [("simplex", &s), ("3-torus", &t)] {
        let cones = cone_structure(c);
        ensure(cones.iter().all(|&b| b), || format!("{name}: cone structure {cones:?}"))?;
    }
    Ok(())
}

fn random_complex(rng: &mut ChaCha8Rng) -> DeltaComplex {
    let n = rng.gen_range(4..9);
    let vertices: Vec<usize> = (0..n).collect();
    let simplices: Vec<Vec<usize>> = (0..rng.gen_range(1..14))
        .map(|_| {
            let k = rng.gen_range(1..=4);
            let mut s: Vec<usize> = vertices.choose_multiple(rng, k).copied().collect();
            s.sort();
            s
        })
        .collect();
    DeltaComplex::from_simplices(&simplices).unwrap()
}

fn euler(b: &[usize]) -> i64 {
    b.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

fn check_complex(g: &DeltaComplex, what: &str) -> Check {
    let q = g.homology(0).unwrap();
    ensure(euler(&q) == g.euler_characteristic(), || format!("{what}: Euler-Poincaré"))?;
    let z: Vec<usize> = g.integer_homology().iter().map(|a| a.rank).collect();
    ensure(z == q, || format!("{what}: Q {q:?} vs Z {z:?}"))
}

fn properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..500 {
        let g = random_complex(&mut rng);
        for n in 2..=g.dim().unwrap_or(0) {
            ensure((&g.boundary_matrix(n - 1) * &g.boundary_matrix(n)).is_zero(), || {
                format!("complex {i}: d∘d ≠ 0 in degree {n}")
            })?;
        }
        check_complex(&g, &format!("complex {i}"))?;
    }
    for i in 0..500 {
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let m = IntMatrix::from_i64_rows(&rows);
        let s = smith_normal_form(&m);
        ensure(&(&s.u * &m) * &s.v == s.d, || format!("matrix {i}: U·m·V ≠ D"))?;
        for w in [&s.u, &s.v] {
            ensure(w.to_rational().determinant().abs().is_one(), || format!("matrix {i}: not unimodular"))?;
        }
        ensure(s.invariant_factors().len() == rank(&m.to_rational()), || format!("matrix {i}: rank"))?;
    }
    for name in NAMES {
        check_complex(&dual_graph(&fixture(name, None).unwrap().config).unwrap(), name)?;
    }
    for (name, c) in [("cy3_simplex_boundary", fixtures::cy3_simplex_boundary()), ("cy3_three_torus", fixtures::cy3_three_torus())] {
        check_complex(c.dual_complex(), name)?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("K3 Type II chain N=2..6: E2^{1,1}=2, E2^{2,0}=0, index 2", k3_chain),
        ("K3 tetrahedron: E2^{2,0}=1=b2(S^2), index 3; Type I index 1", k3_tetrahedron_and_type_one),
        ("abelian cycle N=2..6: E2^{0,1}=2, E2^{1,0}=E2^{-1,2}=1, H^1 sum 4, index 2", abelian_cycle),
        ("abelian Császár: Torus, h=(1,2,1), chi=0, index 3", csaszar),
        ("abelian chain anti-fixture: h1=1", abelian_chain),
        ("Enriques RP2: H(Q)=(1,0,0), H(F2)=(1,1,1), h=(1,0,0), chi=1", enriques_rp2),
        ("bielliptic Klein: h=(1,1,0), chi=0, one Z/2 in H1", bielliptic_klein),
        ("Néron ranks 0..2 give index 1..3, stable under 200 conjugations", neron),
        ("cover pairs validate with equal types", covers),
        ("CY3: simplex boundary Type IV, e2_30=1; 3-torus H1=Z^3; cone structure", cy3),
        ("property suites: d∘d=0, Smith form, Euler-Poincaré, Q vs Z ranks", properties),
    ];
    let mut failed = Vec::new();
    for (i, (label, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = check();
        let secs = start.elapsed().as_secs_f64();
        match &r {
            Ok(()) => println!("criterion {:>2}: PASS  {label}  ({secs:.2}s)", i + 1),
            Err(e) => {
                println!("criterion {:>2}: FAIL  {label}: {e}  ({secs:.2}s)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
