use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::sampling::{
    random_gamma2, random_invertible_gf2, random_profile, sample_conjugator, ProfileShape,
};
use super::{Suite, Trial};
use crate::congruence::{
    braid_involution_solutions, braid_square, claim1_commutator_identities, cyclic_shift3,
    gamma2_with_column, in_gamma, lift_mod2, unipotent_sqrt_sl2,
};
use crate::error::Result;
use crate::exactmat::{element_order, ElementOrder, IntMatrix, Lattice, Vector};
use crate::involution::{
    classify, eigen_lattices, four_involution_witness, involutions_conjugate, order3_witness,
    profile, reflection, standard_commuting_family, InvolutionKind, InvolutionProfile,
};
use crate::transvection::{
    is_even_transvection, mutual_subgroup, recognize_transvection, same_shared_summand,
    shared_eigen_sublattice, shared_summand_predicate, Side,
};

pub(super) fn run_trial(
    suite: Suite,
    rng: &mut ChaCha8Rng,
    n: usize,
    t: &mut Trial<'_>,
) -> Result<()> {
    match suite {
        Suite::Order3Products => order3_products(rng, n, t),
        Suite::ExtremalSquares => extremal_squares(rng, n, t),
        Suite::FourInvolutions => four_involutions(rng, n, t),
        Suite::TransvectionCommutant => transvection_commutant(rng, n, t),
        Suite::MutualSubgroup => mutual_subgroups(rng, n, t),
        Suite::SummandEncoding => summand_encoding(rng, n, t),
        Suite::CommutingFamily => commuting_family(rng, n, t),
        Suite::CommutatorIdentities => commutator_identities(rng, n, t),
        Suite::CongruenceLevelTwo => congruence_level_two(rng, n, t),
        Suite::ModTwoSurjectivity => mod_two_surjectivity(rng, n, t),
    }
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn unit(n: usize, i: usize) -> Vector {
    (0..n).map(|k| big(i64::from(k == i))).collect()
}

fn small_vector(rng: &mut ChaCha8Rng, len: usize, bound: i64) -> Vector {
    (0..len)
        .map(|_| big(rng.gen_range(-bound..=bound)))
        .collect()
}

/// Conjugate of the canonical involution with the given profile.
fn conjugate_of(rng: &mut ChaCha8Rng, prof: InvolutionProfile) -> Result<IntMatrix> {
    sample_conjugator(rng, prof.rank()).conjugate(&prof.canonical_matrix())
}

fn extremal_diag(n: usize) -> IntMatrix {
    InvolutionProfile::new(n - 1, 1, 0).canonical_matrix()
}

fn order3_products(rng: &mut ChaCha8Rng, n: usize, t: &mut Trial<'_>) -> Result<()> {
    let prof = random_profile(rng, n, ProfileShape::NonDiagonalizable);
    let p = conjugate_of(rng, prof)?;
    t.record("P", &p);
    let w = order3_witness(&p)?;
    t.record("witness", &w);
    t.check((&w * &w).is_identity(), || {
        "witness is not an involution".into()
    });
    t.check(involutions_conjugate(&p, &w)?, || {
        "witness not conjugate to P".into()
    });
    let ord = element_order(&(&p * &w), 3);
    t.check(ord == ElementOrder::Finite(3), || {
        format!("witness product order {ord:?}")
    });
    t.count("witness");

    let prof = random_profile(rng, n, ProfileShape::Diagonalizable);
    let d = conjugate_of(rng, prof)?;
    let d2 = sample_conjugator(rng, n).conjugate(&d)?;
    t.record("D1", &d);
    t.record("D2", &d2);
    let ord = element_order(&(&d * &d2), 3);
    t.check(ord != ElementOrder::Finite(3), || {
        "diagonalizable conjugates with order-3 product".into()
    });
    match ord {
        ElementOrder::Finite(1) => t.count("diagonalizable_identity"),
        ElementOrder::Finite(2) => t.count("diagonalizable_involution"),
        _ => t.count("diagonalizable_neither"),
    }
    Ok(())
}

/// `(1) + W diag(-1, I) W^{-1}`: a conjugate of `diag(-1, I)` commuting with it.
fn commuting_extremal(rng: &mut ChaCha8Rng, n: usize) -> Result<IntMatrix> {
    let inner = sample_conjugator(rng, n - 1).conjugate(&extremal_diag(n - 1))?;
    Ok(IntMatrix::block_diag(&[&IntMatrix::identity(1), &inner]))
}

fn extremal_squares(rng: &mut ChaCha8Rng, n: usize, t: &mut Trial<'_>) -> Result<()> {
    let mut d = IntMatrix::identity(n);
    d[(0, 0)] = big(-1);
    let u = sample_conjugator(rng, n);
    let phi = u.conjugate(&d)?;
    t.record("phi", &phi);
    t.check(classify(&phi)? == InvolutionKind::Extremal, || {
        "phi not extremal".into()
    });
    // det -1 rules out phi = x^2
    t.check(phi.det()? == big(-1), || {
        "extremal involution with det != -1".into()
    });

    let q1 = u.conjugate(&commuting_extremal(rng, n)?)?;
    let q2 = u.conjugate(&commuting_extremal(rng, n)?)?;
    let prods = [&phi * &q1, &phi * &q2];
    t.record("K2_a", &prods[0]);
    t.record("K2_b", &prods[1]);
    for prod in &prods {
        t.check((prod * prod).is_identity(), || {
            "commuting product is not an involution".into()
        });
        let kind = classify(prod)?;
        t.check(kind == InvolutionKind::GammaInvolution(2), || {
            format!("product kind {kind}")
        });
    }
    t.check(involutions_conjugate(&prods[0], &prods[1])?, || {
        "K2 involutions not conjugate".into()
    });
    t.count("commuting_pairs");

    let r1 = sample_conjugator(rng, n).conjugate(&d)?;
    let r2 = sample_conjugator(rng, n).conjugate(&d)?;
    let prod = &r1 * &r2;
    if (&prod * &prod).is_identity() {
        t.record("random_pair_product", &prod);
        let kind = classify(&prod)?;
        t.check(
            matches!(
                kind,
                InvolutionKind::Central | InvolutionKind::GammaInvolution(2)
            ),
            || format!("random K2 involution of kind {kind}"),
        );
        t.count("random_pair_involution");
    } else {
        t.count("random_pair_other");
    }

    if n % 2 == 1 {
        // diag(1, -I_{n-1}) is the square of diag(1, R, .., R), R = [[0,-1],[1,0]]
        let rot = IntMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        let mut blocks = vec![IntMatrix::identity(1)];
        blocks.extend(std::iter::repeat_n(rot, (n - 1) / 2));
        let refs: Vec<&IntMatrix> = blocks.iter().collect();
        let root = u.conjugate(&IntMatrix::block_diag(&refs))?;
        let target = u.conjugate(&InvolutionProfile::new(1, n - 1, 0).canonical_matrix())?;
        t.record("square_target", &target);
        t.check(&root * &root == target, || {
            "rotation square mismatch".into()
        });
        t.check(
            profile(&target)? == InvolutionProfile::new(1, n - 1, 0),
            || "square target profile".into(),
        );
        t.count("square_constructed");
    }
    Ok(())
}

fn four_involutions(rng: &mut ChaCha8Rng, n: usize, t: &mut Trial<'_>) -> Result<()> {
    let prof = random_profile(rng, n, ProfileShape::OnePermutation);
    let pi = conjugate_of(rng, prof)?;
    let pi1 = sample_conjugator(rng, n).conjugate(&pi)?;
    let pi2 = sample_conjugator(rng, n).conjugate(&pi)?;
    t.record("pi1", &pi1);
    t.record("pi2", &pi2);
    let prod = &pi1 * &pi2;
    let r = (&IntMatrix::identity(n) - &prod).rank();
    t.check(r <= 2, || format!("rank(I - pi1 pi2) = {r}"));
    if (&prod * &prod).is_identity() {
        let kind = classify(&prod)?;
        t.check(!kind.is_gamma(4), || {
            "1-permutation pair gives a 4-involution".into()
        });
        t.count("permutation_pair_involution");
    }
    t.count("permutation_pairs");

    let prof = random_profile(rng, n, ProfileShape::NotOnePermutation);
    let p = conjugate_of(rng, prof)?;
    t.record("P", &p);
    let w = four_involution_witness(&p)?;
    t.record("witness", &w);
    t.check(involutions_conjugate(&p, &w)?, || {
        "witness not conjugate to P".into()
    });
    let kind = classify(&(&p * &w))?;
    t.check(kind.is_gamma(4), || format!("witness product kind {kind}"));
    t.count(if prof.pairs >= 2 {
        "witness_two_pairs"
    } else {
        "witness_one_pair"
    });
    Ok(())
}

fn transvection_commutant(rng: &mut ChaCha8Rng, n: usize, t: &mut Trial<'_>) -> Result<()> {
    let flip = IntMatrix::diagonal(&[1, -1]);
    let swap = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
    let block = match rng.gen_range(0..3) {
        0 => sample_conjugator(rng, 2).conjugate(&flip)?,
        1 => sample_conjugator(rng, 2).conjugate(&swap)?,
        _ => {
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            let b = rng.gen_range(-12..=12);
            IntMatrix::from_i64(&[&[e, b], &[0, -e]])
        }
    };
    let rest = IntMatrix::identity(n - 2);
    let rho = IntMatrix::block_diag(&[&block, &rest]);
    let phi = IntMatrix::block_diag(&[&flip, &rest]);
    let tau = IntMatrix::block_diag(&[&IntMatrix::from_i64(&[&[1, 2], &[0, 1]]), &rest]);
    t.record("rho", &rho);
    let kind = classify(&rho)?;
    t.check(
        matches!(
            kind,
            InvolutionKind::Extremal | InvolutionKind::OnePermutation
        ),
        || format!("rho of kind {kind}"),
    );
    let s = &phi * &rho;
    let sb = s.principal_block(0, 2);
    let upper = sb[(1, 0)].is_zero() && sb[(0, 0)] == sb[(1, 1)] && sb[(0, 0)].abs() == big(1);
    let commutes = s.commutes_with(&tau);
    t.check(commutes == upper, || {
        format!("commutes = {commutes}, block {sb}")
    });
    if commutes {
        let e = sb[(0, 0)].clone();
        let b = sb[(0, 1)].clone();
        let sq = &sb * &sb;
        let expected = IntMatrix::from_rows(&[vec![big(1), 2 * &e * &b], vec![big(0), big(1)]])?;
        t.check(sq == expected, || format!("square {sq}"));
        if b.is_zero() {
            t.count("commuting_trivial_square");
        } else {
            let full = &s * &s;
            match recognize_transvection(&full) {
                Some(tv) => t.check(tv.m == 2 * b.abs(), || format!("square has m = {}", tv.m)),
                None => t.fail("square is not a transvection"),
            }
            t.count("commuting_even_transvection");
        }
    } else {
        t.count("not_commuting");
    }
    Ok(())
}

enum PairCase {
    SharedHyperplane,
    SharedLine,
    Generic,
}

fn with_head(head: i64, tail: &[BigInt]) -> Vector {
    std::iter::once(big(head))
        .chain(tail.iter().cloned())
        .collect()
}

/// Two distinct extremal involutions built in standard coordinates.
fn extremal_pair(
    rng: &mut ChaCha8Rng,
    n: usize,
    case: &PairCase,
) -> Result<(IntMatrix, IntMatrix)> {
    match case {
        PairCase::SharedHyperplane => {
            // common f = e1*, lines x_i = e1 + h_i with h_1 != h_2
            let h1 = small_vector(rng, n - 1, 3);
            let h2 = loop {
                let h = small_vector(rng, n - 1, 3);
                if h != h1 {
                    break h;
                }
            };
            let f = unit(n, 0);
            Ok((
                reflection(&with_head(1, &h1), &f)?,
                reflection(&with_head(1, &h2), &f)?,
            ))
        }
        PairCase::SharedLine => {
            // common x = e1, functionals f_i = (1, g_i)
            let g1 = small_vector(rng, n - 1, 3);
            let g2 = loop {
                let g = small_vector(rng, n - 1, 3);
                if g != g1 {
                    break g;
                }
            };
            let x = unit(n, 0);
            Ok((
                reflection(&x, &with_head(1, &g1))?,
                reflection(&x, &with_head(1, &g2))?,
            ))
        }
        PairCase::Generic => {
            let d = extremal_diag(n);
            loop {
                let p = sample_conjugator(rng, n).conjugate(&d)?;
                let q = sample_conjugator(rng, n).conjugate(&d)?;
                if p != q {
                    return Ok((p, q));
                }
            }
        }
    }
}

fn mutual_subgroups(rng: &mut ChaCha8Rng, n: usize, t: &mut Trial<'_>) -> Result<()> {
    let case = match rng.gen_range(0..3) {
        0 => PairCase::SharedHyperplane,
        1 => PairCase::SharedLine,
        _ => PairCase::Generic,
    };
    let (p0, q0) = extremal_pair(rng, n, &case)?;
    let u = sample_conjugator(rng, n);
    let p = u.conjugate(&p0)?;
    let q = u.conjugate(&q0)?;
    t.record("P", &p);
    t.record("Q", &q);

    let (pp, pm) = eigen_lattices(&p)?;
    let (qp, qm) = eigen_lattices(&q)?;
    let shared = pp == qp || pm == qm;
    let even = is_even_transvection(&(&q * &p));
    t.check(shared == even, || {
        format!("shared = {shared}, QP even transvection = {even}")
    });
    match case {
        PairCase::SharedHyperplane => {
            t.check(pp == qp, || "constructed hyperplane not shared".into())
        }
        PairCase::SharedLine => t.check(pm == qm, || "constructed line not shared".into()),
        PairCase::Generic => {}
    }
    let found = mutual_subgroup(&p, &q)?;
    t.check(found.is_some() == shared, || {
        "mutual_subgroup disagrees with lattices".into()
    });
    t.count(match (&case, shared) {
        (PairCase::SharedHyperplane, _) => "shared_hyperplane",
        (PairCase::SharedLine, _) => "shared_line",
        (PairCase::Generic, true) => "generic_shared",
        (PairCase::Generic, false) => "generic_unshared",
    });
    Ok(())
}

/// Extremal pair encoding `U<e1>` (line) or `U ker e1*` (hyperplane).
fn encoding_pair(
    rng: &mut ChaCha8Rng,
    u: &IntMatrix,
    side: Side,
) -> Result<(IntMatrix, IntMatrix)> {
    let n = u.rows();
    let case = match side {
        Side::Plus => PairCase::SharedHyperplane,
        Side::Minus => PairCase::SharedLine,
    };
    let (a, b) = extremal_pair(rng, n, &case)?;
    Ok((u.conjugate(&a)?, u.conjugate(&b)?))
}

fn summand_encoding(rng: &mut ChaCha8Rng, n: usize, t: &mut Trial<'_>) -> Result<()> {
    let side = if rng.gen_bool(0.5) {
        Side::Plus
    } else {
        Side::Minus
    };
    let u = sample_conjugator(rng, n);
    let same = rng.gen_bool(0.5);
    let u2 = if same {
        u.clone()
    } else {
        sample_conjugator(rng, n)
    };
    let (p1, p2) = encoding_pair(rng, &u, side)?;
    let (q1, q2) = encoding_pair(rng, &u2, side)?;
    for (name, m) in [("P1", &p1), ("P2", &p2), ("Q1", &q1), ("Q2", &q2)] {
        t.record(name, m);
    }

    let intended = |w: &IntMatrix| -> Result<Lattice> {
        match side {
            Side::Minus => Lattice::from_vectors(n, &[w.column(0)]),
            Side::Plus => Lattice::from_vectors(n, &w.columns()[1..]),
        }
    };
    let target1 = intended(&u)?;
    let target2 = intended(&u2)?;
    match shared_eigen_sublattice(&p1, &p2)? {
        Some((l, s)) => t.check(l == target1 && s == side, || {
            "pair encodes the wrong summand".into()
        }),
        None => t.fail("encoding pair shares nothing"),
    }
    let syntactic = shared_summand_predicate((&p1, &p2), (&q1, &q2))?;
    let semantic = same_shared_summand((&p1, &p2), (&q1, &q2))?;
    let truth = target1 == target2;
    t.check(syntactic == semantic && semantic == truth, || {
        format!("predicate {syntactic}, lattices {semantic}, construction {truth}")
    });
    t.count(match (side, truth) {
        (Side::Plus, true) => "hyperplane_same",
        (Side::Plus, false) => "hyperplane_different",
        (Side::Minus, true) => "line_same",
        (Side::Minus, false) => "line_different",
    });
    Ok(())
}

fn commutes_with_all(m: &IntMatrix, family: &[IntMatrix]) -> bool {
    family.iter().all(|f| m.commutes_with(f))
}

fn commuting_family(rng: &mut ChaCha8Rng, n: usize, t: &mut Trial<'_>) -> Result<()> {
    let family = standard_commuting_family(n)?;
    if t.index == 0 {
        for (i, a) in family.iter().enumerate() {
            t.check(classify(a)? == InvolutionKind::Extremal, || {
                format!("member {i} not extremal")
            });
            for b in &family[i + 1..] {
                t.check(a.commutes_with(b), || {
                    "family members do not commute".into()
                });
                if n >= 5 {
                    let k = classify(&(a * b))?;
                    t.check(k.is_gamma(2), || format!("member product of kind {k}"));
                }
            }
        }
        if n <= 16 {
            let mut extremal_hits = 0usize;
            for code in 0u64..(1 << n) {
                let signs: Vec<i64> = (0..n)
                    .map(|i| if code >> i & 1 == 1 { -1 } else { 1 })
                    .collect();
                let d = IntMatrix::diagonal(&signs);
                if !commutes_with_all(&d, &family) {
                    t.fail(format!("diagonal {d} fails to commute"));
                }
                if classify(&d)? == InvolutionKind::Extremal {
                    extremal_hits += 1;
                    t.check(family.contains(&d), || {
                        format!("extremal {d} outside the family")
                    });
                }
            }
            t.check(extremal_hits == n, || {
                format!("{extremal_hits} extremal sign matrices")
            });
            t.count("exhaustive_sign_check");
        }
    }
    let prof = random_profile(rng, n, ProfileShape::Diagonalizable);
    let p = conjugate_of(rng, prof)?;
    t.record("P", &p);
    if commutes_with_all(&p, &family) {
        t.check(p.is_diagonal(), || {
            "non-diagonal involution commutes with the family".into()
        });
        if classify(&p)? == InvolutionKind::Extremal {
            t.check(family.contains(&p), || {
                "commuting extremal outside the family".into()
            });
        }
        t.count("sample_commuting");
    } else {
        t.check(!p.is_diagonal(), || {
            "diagonal involution rejected by commutation".into()
        });
        t.count("sample_rejected");
    }
    Ok(())
}

fn commutator_identities(rng: &mut ChaCha8Rng, n: usize, t: &mut Trial<'_>) -> Result<()> {
    if t.index == 0 {
        let report = claim1_commutator_identities()?;
        t.check(report.all_hold, || "commutator identities fail".into());
        let sols = braid_involution_solutions();
        t.check(sols.len() == 4, || {
            format!("{} braid solutions", sols.len())
        });
        for r in &sols {
            let even = recognize_transvection(&braid_square(r)).is_some_and(|tv| tv.m == big(2));
            t.check(even, || {
                format!("braid square of {r} is not a 2-transvection")
            });
        }
    }
    // conjugation equivariance of the commutator in rank n
    let rest = IntMatrix::identity(n - 3);
    let sigma = IntMatrix::block_diag(&[
        &IntMatrix::from_i64(&[&[-1, -1, 0], &[0, -1, 0], &[0, 0, 1]]),
        &rest,
    ]);
    let shift = IntMatrix::block_diag(&[&cyclic_shift3(), &rest]);
    let u = sample_conjugator(rng, n);
    t.record("U", &u);
    let s = u.conjugate(&sigma)?;
    let s2 = u.conjugate(&shift.conjugate(&sigma)?)?;
    let comm = IntMatrix::commutator(&s, &s2)?;
    let expected = IntMatrix::block_diag(&[
        &IntMatrix::from_i64(&[&[1, 2, -3], &[0, 1, -2], &[0, 0, 1]]),
        &rest,
    ]);
    t.check(comm == u.conjugate(&expected)?, || {
        "commutator not equivariant".into()
    });

    let k = rng.gen_range(-8..=8i64);
    let tmat = IntMatrix::from_i64(&[&[1, 2 * k], &[0, 1]]);
    t.record("T", &tmat);
    let roots = unipotent_sqrt_sl2(&tmat)?;
    t.check(
        roots.len() == 2 && roots.iter().all(|x| x * x == tmat),
        || "square roots".into(),
    );
    t.count("equivariance");
    Ok(())
}

fn congruence_level_two(rng: &mut ChaCha8Rng, n: usize, t: &mut Trial<'_>) -> Result<()> {
    let two = big(2);
    let sigma = random_gamma2(rng, n);
    t.record("sigma", &sigma);
    t.check(in_gamma(&sigma, &two)?, || "sample outside level 2".into());
    let sigma_inv = sigma.inverse()?;
    let dual = sigma_inv.transpose();
    for j in 0..n {
        // line <e_j>
        let v = sigma.column(j);
        let rho = gamma2_with_column(&v, j)?;
        t.check(in_gamma(&rho, &two)?, || {
            format!("line {j}: rho outside level 2")
        });
        let lhs = Lattice::from_vectors(n, std::slice::from_ref(&v))?;
        let rhs = Lattice::from_vectors(n, &[rho.column(j)])?;
        t.check(lhs == rhs, || format!("line {j}: sigma C != rho C"));

        // hyperplane spanned by e_i, i != j, via the dual action
        let rho_dual = gamma2_with_column(&dual.column(j), j)?;
        let rho = rho_dual.transpose().inverse()?;
        t.check(in_gamma(&rho, &two)?, || {
            format!("hyperplane {j}: rho outside level 2")
        });
        let others: Vec<usize> = (0..n).filter(|&i| i != j).collect();
        let span = |m: &IntMatrix| {
            Lattice::from_vectors(n, &others.iter().map(|&i| m.column(i)).collect::<Vec<_>>())
        };
        t.check(span(&sigma)? == span(&rho)?, || {
            format!("hyperplane {j}: sigma C != rho C")
        });
    }
    t.count("member_checked");

    let outside = loop {
        let m = sample_conjugator(rng, n);
        if !in_gamma(&m, &two)? {
            break m;
        }
    };
    t.record("outside", &outside);
    // some coordinate line and hyperplane are moved off their classes mod 2
    let odd_line = (0..n).find(|&j| gamma2_with_column(&outside.column(j), j).is_err());
    let outside_dual = outside.inverse()?.transpose();
    let odd_plane = (0..n).find(|&j| gamma2_with_column(&outside_dual.column(j), j).is_err());
    t.check(odd_line.is_some(), || {
        "non-member moves no line off its class".into()
    });
    t.check(odd_plane.is_some(), || {
        "non-member moves no hyperplane off its class".into()
    });
    if let Some(j) = odd_line {
        let col = outside.column(j);
        let bad = (0..n).any(|i| (&col[i] - big(i64::from(i == j))) % &two != BigInt::zero());
        t.check(bad, || format!("line {j} flagged but congruent to e_{j}"));
    }
    t.count("non_member_checked");
    Ok(())
}

fn mod_two_surjectivity(rng: &mut ChaCha8Rng, n: usize, t: &mut Trial<'_>) -> Result<()> {
    let g = random_invertible_gf2(rng, n);
    t.record("Mbar", &g.to_int());
    let m = lift_mod2(&g)?;
    t.record("lift", &m);
    t.check(m.det()? == big(1), || "lift has det != 1".into());
    t.check(m.to_gf2() == g, || {
        "lift reduces to a different matrix".into()
    });
    t.count("lifted");
    Ok(())
}
