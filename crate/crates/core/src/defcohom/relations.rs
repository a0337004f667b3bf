use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::check::{map_indices, witness, CheckReport, CheckResult};
use crate::foundation::{int, Vector};

use super::complex::{decode, Cochain, DeformationComplex, Face};
use super::DefError;

fn first_difference(
    cx: &DeformationComplex,
    a: &Cochain,
    b: &Cochain,
) -> Option<(Vec<usize>, Vector, Vector)> {
    let n = a.degree();
    a.values()
        .iter()
        .zip(b.values())
        .position(|(x, y)| x != y)
        .map(|t| {
            (
                decode(t, cx.dim(), n),
                a.values()[t].clone(),
                b.values()[t].clone(),
            )
        })
}

struct FaceCache<'a> {
    cx: &'a DeformationComplex,
    w: &'a Cochain,
    first: HashMap<Face, Cochain>,
    second: HashMap<(Face, Face), Cochain>,
}

impl<'a> FaceCache<'a> {
    fn new(cx: &'a DeformationComplex, w: &'a Cochain) -> Self {
        FaceCache {
            cx,
            w,
            first: HashMap::new(),
            second: HashMap::new(),
        }
    }

    fn one(&mut self, f: Face) -> Cochain {
        if let Some(c) = self.first.get(&f) {
            return c.clone();
        }
        let c = self.cx.face(f, self.w).expect("face index in range");
        self.first.insert(f, c.clone());
        c
    }

    /// `outer ∘ inner` applied to `ω`.
    fn two(&mut self, outer: Face, inner: Face) -> Cochain {
        if let Some(c) = self.second.get(&(outer, inner)) {
            return c.clone();
        }
        let mid = self.one(inner);
        let c = self.cx.face(outer, &mid).expect("face index in range");
        self.second.insert((outer, inner), c.clone());
        c
    }
}

fn face_kind(mu: u8, i: usize) -> Face {
    if mu == 1 {
        Face::Act(i)
    } else {
        Face::Inner(i)
    }
}

/// Evaluates `d∘d = 0`, that every face output is a coderivation along
/// `μ^{n+1}`, the cubical identities and the two relations involving the
/// extra face, for every basis coderivation of degree `n`.
pub fn verify_relations(cx: &DeformationComplex, n: usize) -> Result<CheckReport, DefError> {
    let basis = cx.coderivation_space(n)?;
    let labelled: Vec<(String, Cochain)> = basis
        .into_iter()
        .enumerate()
        .map(|(k, w)| (format!("basis {k}"), w))
        .collect();
    Ok(relations_on(cx, n, &labelled))
}

/// As [`verify_relations`], but when the basis has more than `samples`
/// elements the relations are evaluated on `samples` seeded random integer
/// combinations of it instead, with coefficients in `-100..=100`.
pub fn verify_relations_sampled(
    cx: &DeformationComplex,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<CheckReport, DefError> {
    let basis = cx.coderivation_space(n)?;
    if basis.len() <= samples {
        return verify_relations(cx, n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labelled: Vec<(String, Cochain)> = (0..samples)
        .map(|k| {
            let mut acc = Cochain::zero(cx.dim(), n);
            for w in &basis {
                let c: i64 = rng.gen_range(-100..=100);
                if c != 0 {
                    acc = acc.plus(&w.scaled(&int(c)));
                }
            }
            (format!("sample {k}"), acc)
        })
        .collect();
    Ok(relations_on(cx, n, &labelled))
}

fn relations_on(cx: &DeformationComplex, n: usize, cochains: &[(String, Cochain)]) -> CheckReport {
    let mut d_squared = CheckResult::new("d_squared");
    let mut coder = CheckResult::new("face_coderivation");
    let mut cubical = CheckResult::new("cubical");
    let mut extra_inner = CheckResult::new("extra_last_face");
    let mut extra_last = CheckResult::new("extra_last_last");
    let label = |k: &str, rel: String, diff: Option<(Vec<usize>, Vector, Vector)>| {
        let (t, l, r) = diff.expect("difference present");
        witness(
            vec![
                k.to_string(),
                rel,
                t.iter()
                    .map(|&x| cx.rack().coalgebra().label(x).to_string())
                    .collect::<Vec<_>>()
                    .join("⊗"),
            ],
            cx.rack().render(&l),
            cx.rack().render(&r),
        )
    };
    for (k, w) in cochains {
        let dd = cx.differential(&cx.differential(w));
        let zero = Cochain::zero(cx.dim(), n + 2);
        d_squared.record(dd.is_zero(), || {
            label(k, "d∘d".into(), first_difference(cx, &dd, &zero))
        });

        let mut cache = FaceCache::new(cx, w);
        let mut faces: Vec<Face> = (1..=n)
            .flat_map(|i| [Face::Act(i), Face::Inner(i)])
            .collect();
        faces.push(Face::Last);
        for f in &faces {
            let out = cache.one(*f);
            let res = cx.coderivation_check(&out);
            coder.record(res.passed(), || {
                let c = res.first().expect("failure witness").clone();
                witness(
                    vec![k.clone(), f.to_string(), c.tuple.join("⊗")],
                    c.lhs,
                    c.rhs,
                )
            });
        }

        for i in 1..=n {
            for j in 1..=i {
                for mu in [0u8, 1] {
                    for nu in [0u8, 1] {
                        let lhs = cache.two(face_kind(mu, j), face_kind(nu, i));
                        let rhs = cache.two(face_kind(nu, i + 1), face_kind(mu, j));
                        let rel = format!(
                            "{}∘{} = {}∘{}",
                            face_kind(mu, j),
                            face_kind(nu, i),
                            face_kind(nu, i + 1),
                            face_kind(mu, j)
                        );
                        cubical.record(lhs == rhs, || {
                            label(k, rel, first_difference(cx, &lhs, &rhs))
                        });
                    }
                }
            }
        }

        for i in 1..=n {
            for mu in [0u8, 1] {
                let lhs = cache.two(face_kind(mu, i), Face::Last);
                let rhs = cache.two(Face::Last, face_kind(mu, i));
                let rel = format!("{}∘d_last = d_last∘{}", face_kind(mu, i), face_kind(mu, i));
                extra_inner.record(lhs == rhs, || {
                    label(k, rel, first_difference(cx, &lhs, &rhs))
                });
            }
        }

        let lhs = cache.two(Face::Inner(n + 1), Face::Last);
        let rhs = cache
            .two(Face::Last, Face::Last)
            .plus(&cache.two(Face::Act(n + 1), Face::Last));
        extra_last.record(lhs == rhs, || {
            label(
                k,
                "d_{n+1,0}∘d_last = d_last∘d_last + d_{n+1,1}∘d_last".into(),
                first_difference(cx, &lhs, &rhs),
            )
        });
    }
    let mut report = CheckReport::default();
    for c in [d_squared, coder, cubical, extra_inner, extra_last] {
        report.push(c);
    }
    report
}

/// `μ^n` is a coalgebra morphism and satisfies both recursion identities
/// on every basis tuple.
pub fn mu_n_properties(cx: &DeformationComplex, n: usize) -> CheckReport {
    let d = cx.dim();
    let c = cx.rack().coalgebra();
    let render_t = |t: &[usize]| {
        t.iter()
            .map(|&x| c.label(x).to_string())
            .collect::<Vec<_>>()
            .join("⊗")
    };
    let mut report = CheckReport::default();

    let outcomes = map_indices(d.pow(n as u32), |t| {
        let r = decode(t, d, n);
        let m = cx.mu_n(&r);
        let lhs = c.delta_vec(&m);
        let mut rhs = crate::rack::Tensor2::zero();
        let prefix = cx.split_prefix(&r);
        for (a, b, s) in &prefix {
            let (x, y) = (cx.mu_n(a), cx.mu_n(b));
            for (p, u) in &x {
                for (q, v) in &y {
                    rhs.add_term((*p, *q), s * u * v);
                }
            }
        }
        let eps: crate::foundation::Scalar = r.iter().map(|&x| c.eps(x).clone()).product();
        let ok = lhs == rhs && c.eps_vec(&m) == eps;
        (!ok).then(|| {
            witness(
                vec![render_t(&r)],
                c.render_tensor(&lhs),
                c.render_tensor(&rhs),
            )
        })
    });
    report.push(CheckResult::from_outcomes(
        format!("mu{n}_coalgebra_morphism"),
        outcomes,
    ));

    let outcomes = map_indices(d.pow(n as u32), |t| {
        let r = decode(t, d, n);
        let target = cx.mu_n(&r);
        let mut fails = Vec::new();
        for i in 1..n {
            let mut acc = Vector::zero();
            for (a, b, s) in cx.split_prefix(&r[..i - 1]) {
                let mut left = a;
                left.push(r[i - 1]);
                let mut right = b;
                right.extend_from_slice(&r[i..]);
                let prod = cx.rack().product(&cx.mu_n(&left), &cx.mu_n(&right));
                acc.add_scaled(&prod, &s);
            }
            if acc != target {
                fails.push(witness(
                    vec![format!("i={i}"), render_t(&r)],
                    cx.rack().render(&acc),
                    cx.rack().render(&target),
                ));
            }
        }
        fails
    });
    let mut eq1 = CheckResult::new(format!("mu{n}_split_identity"));
    for fails in outcomes {
        let total = n.saturating_sub(1);
        let failed = fails.len();
        for w in fails {
            eq1.absorb(Some(w));
        }
        for _ in failed..total {
            eq1.absorb(None);
        }
    }
    report.push(eq1);

    let outcomes = map_indices(d.pow(n as u32 + 1), |t| {
        let r = decode(t, d, n + 1);
        let target = cx.mu_n(&r);
        let mut fails = Vec::new();
        for i in 1..n {
            let m = n + 1 - i;
            let pieces = c.iterated_delta(r[i - 1], m);
            let mut acc = Vector::zero();
            for (parts, s) in &pieces {
                let mut args: Vec<Vector> = r[..i - 1].iter().map(|&x| Vector::basis(x)).collect();
                for (k, &p) in parts.iter().enumerate() {
                    args.push(cx.rack().product_basis(p, r[i + k]).clone());
                }
                acc.add_scaled(&cx.mu_n_comb(&super::complex::expand(&args)), s);
            }
            if acc != target {
                fails.push(witness(
                    vec![format!("i={i}"), render_t(&r)],
                    cx.rack().render(&acc),
                    cx.rack().render(&target),
                ));
            }
        }
        fails
    });
    let mut eq2 = CheckResult::new(format!("mu{n}_inner_identity"));
    for fails in outcomes {
        let total = n.saturating_sub(1);
        let failed = fails.len();
        for w in fails {
            eq2.absorb(Some(w));
        }
        for _ in failed..total {
            eq2.absorb(None);
        }
    }
    report.push(eq2);
    report
}
