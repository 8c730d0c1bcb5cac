//! Standard small groups and the test corpus of all groups of order ≤ 24.

use crate::group::{Elem, FiniteGroup};
use crate::hom::quotient;
use crate::subgroup::generated_subgroup;

/// Number of isomorphism classes of groups of order `n`, for `n ≤ 24`.
pub const SMALL_GROUP_COUNTS: [usize; 25] = [
    0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15,
];

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

/// `Z/n` with generator `g = 1`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let labels = (0..n)
        .map(|k| {
            if k == 0 {
                "1".into()
            } else {
                power_label("g", k)
            }
        })
        .collect();
    FiniteGroup::from_fn(n, labels, |a, b| (a + b) % n).expect("cyclic group")
}

/// `A × B` with `(x, y)` at index `x·|B| + y`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let m = b.order();
    let labels = (0..a.order() * m)
        .map(|i| format!("({},{})", a.label(i / m), b.label(i % m)))
        .collect();
    FiniteGroup::from_fn(a.order() * m, labels, |x, y| {
        a.mul(x / m, y / m) * m + b.mul(x % m, y % m)
    })
    .expect("direct product")
}

/// `(Z/p)^k` with coordinates written as digits, e.g. `(1,0)`.
pub fn elementary_abelian(p: usize, k: usize) -> FiniteGroup {
    let n = p.pow(k as u32);
    let digits = |mut x: usize| {
        let mut d = vec![0; k];
        for slot in d.iter_mut().rev() {
            *slot = x % p;
            x /= p;
        }
        d
    };
    let labels = (0..n)
        .map(|x| {
            let d: Vec<String> = digits(x).iter().map(|v| v.to_string()).collect();
            format!("({})", d.join(","))
        })
        .collect();
    FiniteGroup::from_fn(n, labels, |x, y| {
        digits(x)
            .iter()
            .zip(digits(y))
            .fold(0, |acc, (a, b)| acc * p + (a + b) % p)
    })
    .expect("elementary abelian group")
}

/// `Z/2 × Z/2` as `(a,b)` at index `2a + b`.
pub fn klein_four() -> FiniteGroup {
    elementary_abelian(2, 2)
}

/// `<a, b | a^m, b^n = a^t, b a b^-1 = a^r>` with `a^i b^j` at index
/// `j·m + i`. Panics if the parameters do not define a group of order `m·n`.
pub fn metacyclic(m: usize, n: usize, t: usize, r: usize) -> FiniteGroup {
    let order = m * n;
    let rpow: Vec<usize> = (0..n)
        .scan(1 % m, |acc, _| {
            let cur = *acc;
            *acc = *acc * r % m;
            Some(cur)
        })
        .collect();
    let labels = (0..order)
        .map(|x| {
            let (i, j) = (x % m, x / m);
            let s = format!("{}{}", power_label("a", i), power_label("b", j));
            if s.is_empty() {
                "1".into()
            } else {
                s
            }
        })
        .collect();
    FiniteGroup::from_fn(order, labels, |x, y| {
        let (i, j) = (x % m, x / m);
        let (k, l) = (y % m, y / m);
        let mut a = i + k * rpow[j];
        let mut b = j + l;
        if b >= n {
            b -= n;
            a += t;
        }
        b * m + a % m
    })
    .unwrap_or_else(|e| panic!("metacyclic({m},{n},{t},{r}): {e}"))
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> FiniteGroup {
    metacyclic(n, 2, 0, n - 1)
}

/// Dicyclic group of order `4m`.
pub fn dicyclic(m: usize) -> FiniteGroup {
    metacyclic(2 * m, 2, m, 2 * m - 1)
}

/// Generalized quaternion group of the given order (a power of two ≥ 8).
pub fn quaternion(order: usize) -> FiniteGroup {
    assert!(order >= 8 && order.is_power_of_two());
    dicyclic(order / 4)
}

/// `A ⋊ B` where `action(b, x)` is the automorphism of `A` attached to `b`.
/// `(x, y)` sits at index `y·|A| + x` and `(x1,y1)(x2,y2) = (x1·y1(x2), y1y2)`.
pub fn semidirect(
    a: &FiniteGroup,
    b: &FiniteGroup,
    action: impl Fn(Elem, Elem) -> Elem,
) -> FiniteGroup {
    let m = a.order();
    let labels = (0..m * b.order())
        .map(|i| format!("({},{})", a.label(i % m), b.label(i / m)))
        .collect();
    let act: Vec<Vec<Elem>> = b
        .elements()
        .map(|y| a.elements().map(|x| action(y, x)).collect())
        .collect();
    FiniteGroup::from_fn(m * b.order(), labels, |p, q| {
        let (x1, y1) = (p % m, p / m);
        let (x2, y2) = (q % m, q / m);
        b.mul(y1, y2) * m + a.mul(x1, act[y1][x2])
    })
    .expect("semidirect product")
}

/// Symmetric group on `n ≥ 1` points.
pub fn symmetric(n: usize) -> FiniteGroup {
    let mut gens = vec![(0..n).collect::<Vec<_>>()];
    if n >= 2 {
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        gens = vec![t, cycle];
    }
    FiniteGroup::from_permutations(&gens, usize::MAX).expect("symmetric group")
}

/// Alternating group on `n ≥ 1` points, generated by the 3-cycles `(0 1 i)`.
pub fn alternating(n: usize) -> FiniteGroup {
    let mut gens = vec![(0..n).collect::<Vec<_>>()];
    for i in 2..n {
        let mut p: Vec<usize> = (0..n).collect();
        p[0] = 1;
        p[1] = i;
        p[i] = 0;
        gens.push(p);
    }
    FiniteGroup::from_permutations(&gens, usize::MAX).expect("alternating group")
}

/// `SL(2,3)` acting on the eight nonzero vectors of `F_3^2`.
pub fn sl2_3() -> FiniteGroup {
    let vectors: Vec<(usize, usize)> = (0..9)
        .map(|v| (v / 3, v % 3))
        .filter(|&v| v != (0, 0))
        .collect();
    let act = |m: [[usize; 2]; 2]| -> Vec<usize> {
        vectors
            .iter()
            .map(|&(x, y)| {
                let img = (
                    (m[0][0] * x + m[0][1] * y) % 3,
                    (m[1][0] * x + m[1][1] * y) % 3,
                );
                vectors.iter().position(|&v| v == img).unwrap()
            })
            .collect()
    };
    let gens = vec![act([[1, 1], [0, 1]]), act([[0, 2], [1, 0]])];
    FiniteGroup::from_permutations(&gens, usize::MAX).expect("SL(2,3)")
}

/// Central product `Z/4 ∘ D_4` (the Pauli group).
pub fn pauli() -> FiniteGroup {
    let g = direct_product(&cyclic(4), &dihedral(4));
    // (g^2, a^2): D_4 has order 8, so a^2 sits at index 2.
    let z = generated_subgroup(&g, &[2 * 8 + 2]).expect("central element");
    quotient(&g, &z).expect("central subgroup is normal").0
}

/// A group in a named isomorphism class of the corpus.
#[derive(Clone, Debug)]
pub struct CorpusGroup {
    pub name: String,
    pub group: FiniteGroup,
}

fn abelian(factors: &[usize]) -> FiniteGroup {
    factors.iter().skip(1).fold(cyclic(factors[0]), |acc, &f| {
        direct_product(&acc, &cyclic(f))
    })
}

fn abelian_name(factors: &[usize]) -> String {
    factors
        .iter()
        .map(|f| format!("Z{f}"))
        .collect::<Vec<_>>()
        .join("x")
}

/// One group per isomorphism class, for every order up to `max_order ≤ 24`,
/// sorted by order.
pub fn small_groups(max_order: usize) -> Vec<CorpusGroup> {
    assert!(max_order <= 24, "corpus only covers orders up to 24");
    let mut out = Vec::new();
    let mut add = |name: String, group: FiniteGroup| {
        if group.order() <= max_order {
            out.push(CorpusGroup { name, group });
        }
    };
    let abelian_types: &[&[usize]] = &[
        &[1],
        &[2],
        &[3],
        &[4],
        &[2, 2],
        &[5],
        &[6],
        &[7],
        &[8],
        &[4, 2],
        &[2, 2, 2],
        &[9],
        &[3, 3],
        &[10],
        &[11],
        &[12],
        &[6, 2],
        &[13],
        &[14],
        &[15],
        &[16],
        &[4, 4],
        &[4, 2, 2],
        &[2, 2, 2, 2],
        &[8, 2],
        &[17],
        &[18],
        &[6, 3],
        &[19],
        &[20],
        &[10, 2],
        &[21],
        &[22],
        &[23],
        &[24],
        &[12, 2],
        &[6, 2, 2],
    ];
    for f in abelian_types {
        if f.iter().product::<usize>() <= max_order {
            add(abelian_name(f), abelian(f));
        }
    }
    if max_order < 6 {
        return finish(out);
    }
    let z2 = cyclic(2);
    add("S3".into(), symmetric(3));
    add("D4".into(), dihedral(4));
    add("Q8".into(), quaternion(8));
    add("D5".into(), dihedral(5));
    add("D6".into(), dihedral(6));
    add("A4".into(), alternating(4));
    add("Dic3".into(), dicyclic(3));
    add("D7".into(), dihedral(7));
    if max_order >= 16 {
        add("D8".into(), dihedral(8));
        add("Q16".into(), quaternion(16));
        add("SD16".into(), metacyclic(8, 2, 0, 3));
        add("M16".into(), metacyclic(8, 2, 0, 5));
        add("Z4:Z4".into(), metacyclic(4, 4, 0, 3));
        add("D4xZ2".into(), direct_product(&dihedral(4), &z2));
        add("Q8xZ2".into(), direct_product(&quaternion(8), &z2));
        add("Pauli".into(), pauli());
        // (Z4 x Z2) : Z2 with a -> ab, b -> b.
        let z4z2 = abelian(&[4, 2]);
        add(
            "(Z4xZ2):Z2".into(),
            semidirect(&z4z2, &z2, |y, x| {
                if y == 0 {
                    x
                } else {
                    let (i, j) = (x / 2, x % 2);
                    i * 2 + (i + j) % 2
                }
            }),
        );
    }
    if max_order >= 18 {
        add("D9".into(), dihedral(9));
        add("S3xZ3".into(), direct_product(&symmetric(3), &cyclic(3)));
        let z3z3 = abelian(&[3, 3]);
        add(
            "(Z3xZ3):Z2".into(),
            semidirect(&z3z3, &z2, |y, x| if y == 0 { x } else { z3z3.inv(x) }),
        );
    }
    if max_order >= 20 {
        add("D10".into(), dihedral(10));
        add("Dic5".into(), dicyclic(5));
        add("F20".into(), metacyclic(5, 4, 0, 2));
    }
    if max_order >= 21 {
        add("Z7:Z3".into(), metacyclic(7, 3, 0, 2));
    }
    if max_order >= 22 {
        add("D11".into(), dihedral(11));
    }
    if max_order >= 24 {
        add("S4".into(), symmetric(4));
        add("SL(2,3)".into(), sl2_3());
        add("Dic6".into(), dicyclic(6));
        add("Z3:Z8".into(), metacyclic(3, 8, 0, 2));
        add("D12".into(), dihedral(12));
        add("Dic3xZ2".into(), direct_product(&dicyclic(3), &z2));
        add("S3xZ4".into(), direct_product(&symmetric(3), &cyclic(4)));
        add("D4xZ3".into(), direct_product(&dihedral(4), &cyclic(3)));
        add("Q8xZ3".into(), direct_product(&quaternion(8), &cyclic(3)));
        add("A4xZ2".into(), direct_product(&alternating(4), &z2));
        add("D6xZ2".into(), direct_product(&dihedral(6), &z2));
        // Z3 : D4 where the Klein four subgroup <a^2, b> acts trivially.
        let d4 = dihedral(4);
        let z3 = cyclic(3);
        add(
            "Z3:D4".into(),
            semidirect(&z3, &d4, |y, x| {
                // a^i b^j at index 4j + i; a acts by inversion.
                if (y % 4) % 2 == 1 {
                    z3.inv(x)
                } else {
                    x
                }
            }),
        );
    }
    finish(out)
}

fn finish(mut out: Vec<CorpusGroup>) -> Vec<CorpusGroup> {
    out.sort_by_key(|c| c.group.order());
    out
}
