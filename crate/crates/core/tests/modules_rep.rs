use std::sync::Arc;

use sttilt::catalog::catalog;
use sttilt::field_linalg::Matrix;
use sttilt::modules_rep::{indecomposables_isomorphic, is_isomorphic, Representation};
use sttilt::quiver_algebra::BoundAlgebra;

fn alg(name: &str) -> Arc<BoundAlgebra> {
    Arc::new(catalog(name).unwrap())
}

/// Builds a module from `(arrow label, rows)` entries; missing arrows act by zero.
fn rep(a: &Arc<BoundAlgebra>, dims: &[usize], maps: &[(&str, Vec<Vec<i64>>)]) -> Representation {
    let p = a.characteristic();
    let gens = a
        .generators()
        .iter()
        .map(|&g| {
            let b = &a.basis()[g];
            let (r, c) = (dims[b.source], dims[b.target]);
            match maps.iter().find(|(l, _)| *l == b.label) {
                Some((_, rows)) => {
                    let m = Matrix::from_rows(p, rows);
                    assert_eq!((m.rows(), m.cols()), (r, c), "shape for {}", b.label);
                    m
                }
                None => Matrix::zeros(p, r, c),
            }
        })
        .collect();
    Representation::from_matrices(a.clone(), dims.to_vec(), gens).unwrap()
}

#[test]
fn projective_dimension_vectors_are_cartan_rows() {
    for name in ["D3~", "Example26", "D3", "P4", "Lambda_2", "A_3"] {
        let a = alg(name);
        let c = a.cartan_matrix();
        for i in 0..a.num_vertices() {
            let p = Representation::projective(a.clone(), i);
            assert_eq!(p.dim_vector(), c[i].as_slice(), "{name} P{i}");
            assert!(p.satisfies_relations());
        }
    }
}

#[test]
fn d3_tilde_projective_shapes() {
    let a = alg("D3~");
    assert_eq!(Representation::projective(a.clone(), 0).dim_vector(), &[1, 1, 1]);
    let p2 = Representation::projective(a.clone(), 1);
    let (rad, top) = p2.radical_and_top();
    assert_eq!(rad.dim_vector(), &[1, 1, 2]);
    assert_eq!(top, vec![0, 1, 0]);
}

#[test]
fn yoneda_on_catalog_algebras() {
    for name in ["D3~", "Example26", "D4~", "Lambda_1", "A_2", "K4~"] {
        let a = alg(name);
        let n = a.num_vertices();
        let mods: Vec<Representation> = (0..n)
            .flat_map(|i| [Representation::projective(a.clone(), i), Representation::injective(a.clone(), i), Representation::simple(a.clone(), i)])
            .collect();
        for i in 0..n {
            let p = Representation::projective(a.clone(), i);
            for m in &mods {
                assert_eq!(p.hom(m).dim(), m.dim_vector()[i], "{name}");
                assert_eq!(p.hom_direct(m).dim(), m.dim_vector()[i], "{name}");
            }
        }
    }
}

#[test]
fn hom_between_projectives_is_cartan() {
    let a = alg("D4~");
    let c = a.cartan_matrix();
    for i in 0..a.num_vertices() {
        for j in 0..a.num_vertices() {
            let pi = Representation::projective(a.clone(), i);
            let pj = Representation::projective(a.clone(), j);
            assert_eq!(pi.hom(&pj).dim(), c[j][i], "Hom(P{i},P{j})");
            // Hom(P_i, P_j) = e_j A e_i has dimension c_ji.
            assert_eq!(pi.hom(&pj).dim(), pj.dim_vector()[i]);
        }
    }
}

#[test]
fn hom_basis_elements_intertwine() {
    let a = alg("D3~");
    let mods: Vec<Representation> = (0..3)
        .flat_map(|i| [Representation::projective(a.clone(), i), Representation::injective(a.clone(), i)])
        .collect();
    for m in &mods {
        for n in &mods {
            let h = m.hom(n);
            assert_eq!(h.dim(), m.hom_direct(n).dim());
            for f in &h.basis {
                for (gi, &g) in a.generators().iter().enumerate() {
                    let b = &a.basis()[g];
                    let lhs = m.generator_matrix(gi).mul(&f.blocks[b.target]);
                    let rhs = f.blocks[b.source].mul(n.generator_matrix(gi));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn example26_simples() {
    let a = alg("Example26");
    let s1 = Representation::simple(a.clone(), 0);
    let s2 = Representation::simple(a.clone(), 1);
    assert_eq!(s1.hom(&s2).dim(), 0);
    assert_eq!(s1.hom_direct(&s2).dim(), 0);
    let pres = s1.minimal_presentation();
    assert_eq!(pres.p0, vec![0]);
    assert_eq!(pres.p1, vec![1]);
    assert_eq!(s1.g_vector(), vec![1, -1]);
    let t = s1.tau();
    assert_eq!(t.dim_vector(), &[0, 1]);
    assert!(indecomposables_isomorphic(&t, &s2));
    for m in [
        Representation::projective(a.clone(), 0),
        Representation::projective(a.clone(), 1),
        s1.clone(),
        s2.clone(),
    ] {
        assert!(m.is_tau_rigid());
        assert!(m.is_tau_rigid_direct());
    }
}

#[test]
fn dual_numbers_simple_is_its_own_translate() {
    let a = alg("Lambda_1");
    let s = Representation::simple(a.clone(), 0);
    let t = s.tau();
    assert_eq!(t.dim_vector(), &[1]);
    assert!(!s.is_tau_rigid());
    assert!(!s.is_tau_rigid_direct());
}

#[test]
fn projectives_have_zero_translate_and_unit_g_vectors() {
    for name in ["D3~", "Example26", "P4", "A_3"] {
        let a = alg(name);
        for i in 0..a.num_vertices() {
            let p = Representation::projective(a.clone(), i);
            assert!(p.tau().is_zero());
            assert!(p.is_tau_rigid());
            let mut e = vec![0i64; a.num_vertices()];
            e[i] = 1;
            assert_eq!(p.g_vector(), e);
        }
    }
}

#[test]
fn d3_tilde_two_over_three_presentation() {
    let a = alg("D3~");
    let m = rep(&a, &[0, 1, 1], &[("a2", vec![vec![1]])]);
    let pres = m.minimal_presentation();
    assert_eq!(pres.p0, vec![1]);
    // P2 -> 2/3 has kernel b1·A, which is isomorphic to P1.
    assert_eq!(pres.p1, vec![0]);
    assert_eq!(m.g_vector(), vec![-1, 1, 0]);
    assert!(m.is_tau_rigid());
    assert!(m.is_tau_rigid_direct());
}

#[test]
fn decompose_sums_of_projectives() {
    let a = alg("Example26");
    let p1 = Representation::projective(a.clone(), 0);
    let p2 = Representation::projective(a.clone(), 1);
    let sum = Representation::direct_sum(a.clone(), &[&p1, &p1]);
    let parts = sum.decompose().unwrap();
    assert_eq!(parts.len(), 2);
    assert!(parts.iter().all(|x| indecomposables_isomorphic(x, &p1)));

    let reg = Representation::regular(a.clone());
    let parts = reg.decompose().unwrap();
    assert_eq!(parts.len(), 2);
    assert!(is_isomorphic(&reg, &Representation::direct_sum(a.clone(), &[&p2, &p1])).unwrap());
}

#[test]
fn decompose_regular_module_of_larger_algebras() {
    for name in ["D3~", "D4~", "A_3", "Lambda_2", "K4~"] {
        let a = alg(name);
        let reg = Representation::regular(a.clone());
        let parts = reg.decompose().unwrap();
        assert_eq!(parts.len(), a.num_vertices(), "{name}");
        let mut dims = vec![0; a.num_vertices()];
        for x in &parts {
            for (d, v) in dims.iter_mut().zip(x.dim_vector()) {
                *d += v;
            }
            assert_eq!(x.decompose().unwrap().len(), 1);
        }
        assert_eq!(dims, reg.dim_vector());
    }
}

#[test]
fn injectives_are_dual_projectives() {
    let a = alg("D3~");
    let c = a.cartan_matrix();
    for j in 0..3 {
        let i = Representation::injective(a.clone(), j);
        assert!(i.satisfies_relations());
        let col: Vec<usize> = (0..3).map(|v| c[v][j]).collect();
        assert_eq!(i.dim_vector(), col.as_slice());
        // The socle of I_j is S_j: Hom(S_v, I_j) = δ_vj.
        for v in 0..3 {
            let s = Representation::simple(a.clone(), v);
            assert_eq!(s.hom(&i).dim(), usize::from(v == j));
        }
    }
}

#[test]
fn json_dump_round_trips() {
    let a = alg("D3~");
    let m = Representation::injective(a.clone(), 1);
    let text = m.to_json().unwrap();
    let back = Representation::from_json(a.clone(), &text).unwrap();
    assert_eq!(back.dim_vector(), m.dim_vector());
    assert!(is_isomorphic(&m, &back).unwrap());
}

#[test]
fn relation_violations_are_rejected() {
    let a = alg("Example26");
    // a1 b1 = 0 fails when both arrows act by 1.
    let p = a.characteristic();
    let gens = vec![Matrix::identity(p, 1), Matrix::identity(p, 1)];
    assert!(Representation::from_matrices(a, vec![1, 1], gens).is_err());
}
