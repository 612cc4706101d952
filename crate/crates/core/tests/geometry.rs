use dualpolar::family::{FamilyParams, FamilyTag};
use dualpolar::geometry::{
    build_graph, build_space, enumerate_maximal_isotropics, vertex_count_formula, Fq, GeometryError,
};
use std::time::Instant;

const CAP: usize = 10_000;

fn params(tag: FamilyTag, d: usize) -> FamilyParams {
    FamilyParams::new(tag, d).unwrap()
}

/// Product formulas written out per family, independent of the library's own count.
fn oracle(tag: FamilyTag, q: u64, d: u32) -> u64 {
    match tag {
        FamilyTag::C | FamilyTag::B => (1..=d).map(|i| q.pow(i) + 1).product(),
        FamilyTag::D => (0..d).map(|i| q.pow(i) + 1).product(),
        FamilyTag::TwoD => (2..=d + 1).map(|i| q.pow(i) + 1).product(),
        FamilyTag::TwoAOdd => {
            let r = (q as f64).sqrt() as u64;
            (1..=d).map(|i| r.pow(2 * i - 1) + 1).product()
        }
        FamilyTag::TwoAEven => {
            let r = (q as f64).sqrt() as u64;
            (1..=d).map(|i| r.pow(2 * i + 1) + 1).product()
        }
    }
}

#[test]
fn enumeration_counts_match_product_formulas() {
    let cases = [
        (FamilyTag::C, 2, 3, 135),
        (FamilyTag::C, 3, 3, 1120),
        (FamilyTag::B, 2, 3, 135),
        (FamilyTag::D, 2, 3, 30),
        (FamilyTag::D, 2, 4, 270),
        (FamilyTag::TwoAOdd, 4, 3, 891),
        (FamilyTag::TwoD, 2, 3, 765),
    ];
    for (tag, q, d, expected) in cases {
        let start = Instant::now();
        let space = build_space(params(tag, d), q).unwrap();
        let subspaces = enumerate_maximal_isotropics(&space, CAP).unwrap();
        assert_eq!(subspaces.len(), expected, "{tag}({q},{d})");
        assert_eq!(oracle(tag, q, d as u32), expected as u64);
        assert_eq!(vertex_count_formula(params(tag, d), q), Some(expected as u128));
        assert!(start.elapsed().as_secs() < 60, "{tag}({q},{d}) too slow");
        for s in &subspaces {
            assert_eq!(s.rank(), d);
            let rows: Vec<&[u16]> = s.rows.iter().map(Vec::as_slice).collect();
            assert!(space.is_totally_isotropic(&rows));
        }
        assert!(subspaces.windows(2).all(|w| w[0] < w[1]), "sorted and duplicate-free");
    }
}

#[test]
fn enumeration_is_deterministic() {
    let space = build_space(params(FamilyTag::D, 3), 3).unwrap();
    let a = enumerate_maximal_isotropics(&space, CAP).unwrap();
    let b = enumerate_maximal_isotropics(&space, CAP).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len() as u64, oracle(FamilyTag::D, 3, 3));
}

#[test]
fn valencies_and_no_self_loops() {
    for (tag, q, d, n, k) in [(FamilyTag::C, 2, 3, 135, 14), (FamilyTag::D, 2, 3, 30, 7)] {
        let g = build_graph(params(tag, d), q, CAP).unwrap();
        assert_eq!(g.len(), n);
        for x in 0..g.len() {
            assert_eq!(g.adj[x].len(), k);
            assert!(!g.adjacent(x, x));
            assert_eq!(g.meet_dim(x, x), d);
            assert_eq!(g.dist(x, x), 0);
        }
        assert_eq!(g.num_edges(), n * k / 2);
    }
}

#[test]
fn even_b_matches_c_parameters() {
    let b = build_graph(params(FamilyTag::B, 3), 2, CAP).unwrap();
    let c = build_graph(params(FamilyTag::C, 3), 2, CAP).unwrap();
    assert_eq!(b.len(), c.len());
    let profile = |g: &dualpolar::geometry::DPGraph| {
        let mut dist = vec![0usize; g.diameter() + 1];
        for y in 0..g.len() {
            dist[g.dist(0, y)] += 1;
        }
        (g.adj[0].len(), dist)
    };
    assert_eq!(profile(&b), profile(&c));
}

#[test]
fn edge_list_header_and_order() {
    let g = build_graph(params(FamilyTag::D, 3), 2, CAP).unwrap();
    let text = g.edge_list();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# D 2 3 30"));
    let edges: Vec<(usize, usize)> = lines
        .map(|l| {
            let (u, v) = l.split_once(' ').unwrap();
            (u.parse().unwrap(), v.parse().unwrap())
        })
        .collect();
    assert_eq!(edges.len(), 30 * 7 / 2);
    assert!(edges.iter().all(|&(u, v)| u < v && g.adjacent(u, v)));
    assert_eq!(text, g.edge_list());
}

#[test]
fn invalid_instances() {
    assert_eq!(build_space(params(FamilyTag::TwoAOdd, 3), 3).unwrap_err(), GeometryError::HermitianNeedsSquare(3));
    assert_eq!(build_space(params(FamilyTag::TwoAEven, 3), 2).unwrap_err().to_string(),
        "Hermitian family requires square q (got 2)");
    assert_eq!(Fq::new(6).unwrap_err(), GeometryError::NotPrimePower(6));
    let err = build_graph(params(FamilyTag::C, 3), 3, 100).unwrap_err();
    assert!(err.to_string().starts_with("instance too large"), "{err}");
}

#[test]
fn f4_defining_polynomial() {
    assert_eq!(Fq::new(4).unwrap().defining_poly(), &[1, 1, 1]);
}
