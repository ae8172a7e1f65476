//! Executable checks: modular-operad axioms, cyclic and modular morphisms,
//! and independence of the canonical expression.
//!
//! Every check enumerates well-typed instances over label sets of bounded
//! size (optionally followed by seeded random instances), compares the two
//! sides exactly, and reports per family the number of instances, the number
//! of failures and the first failing instance in enumeration order.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ass::AssElement;
use crate::canonical::all_canonical_diagrams;
use crate::enumerate::{permutations, surface_family};
use crate::error::Result;
use crate::exec::Execution;
use crate::surface::Surface;
use crate::words::{Label, Renaming};

use super::samples::{
    label_set, primed, primed_permutation, random_permutation, SampleSource, SurfaceSamples,
    WordSamples,
};
use super::{
    inclusion, tilde_f, tilde_f_along, to_terminal, AssMorphism, Point, QoTarget, TargetOperad,
    Terminal,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} != {}", self.instance, self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub exhaustive: u64,
    pub random: u64,
    pub failures: u64,
    pub counterexample: Option<Counterexample>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn instances(&self) -> u64 {
        self.exhaustive + self.random
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub target: String,
    pub families: Vec<FamilyReport>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(FamilyReport::passed)
    }

    pub fn family(&self, name: &str) -> Option<&FamilyReport> {
        self.families.iter().find(|f| f.family == name)
    }

    pub fn failing(&self) -> impl Iterator<Item = &FamilyReport> {
        self.families.iter().filter(|f| !f.passed())
    }

    pub fn instances(&self) -> u64 {
        self.families.iter().map(FamilyReport::instances).sum()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} on {}", self.check, self.target)?;
        let width = self
            .families
            .iter()
            .map(|x| x.family.len())
            .max()
            .unwrap_or(0);
        for fam in &self.families {
            let verdict = if fam.passed() { "PASS" } else { "FAIL" };
            write!(
                f,
                "  {verdict} {:<width$}  {} exhaustive, {} random, {} failures",
                fam.family, fam.exhaustive, fam.random, fam.failures
            )?;
            if let Some(c) = &fam.counterexample {
                write!(f, "\n       counterexample {c}")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "{}",
            if self.passed() {
                "all families pass"
            } else {
                "FAILED"
            }
        )
    }
}

/// Size limits, random instance count and seed for a check run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Labels per input element in the exhaustive phase.
    pub max_labels: usize,
    /// Number of random instances, spread evenly over the families.
    pub random: usize,
    /// Labels per input element in the random phase.
    pub random_max_labels: usize,
    pub seed: u64,
    pub exec: Execution,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_labels: 3,
            random: 0,
            random_max_labels: 8,
            seed: 0,
            exec: Execution::default(),
        }
    }
}

impl Budget {
    pub fn exhaustive(max_labels: usize) -> Self {
        Budget {
            max_labels,
            ..Budget::default()
        }
    }

    pub fn with_random(mut self, random: usize, seed: u64) -> Self {
        self.random = random;
        self.seed = seed;
        self
    }

    pub fn with_exec(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }
}

fn show<E: fmt::Display>(r: &Result<E>) -> String {
    match r {
        Ok(e) => e.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn compare<E: PartialEq + fmt::Display>(
    lhs: Result<E>,
    rhs: Result<E>,
    instance: impl FnOnce() -> String,
) -> Option<Counterexample> {
    match (&lhs, &rhs) {
        (Ok(x), Ok(y)) if x == y => None,
        _ => Some(Counterexample {
            instance: instance(),
            lhs: show(&lhs),
            rhs: show(&rhs),
        }),
    }
}

fn expect_grade(
    actual: Result<u32>,
    expected: u32,
    instance: impl FnOnce() -> String,
) -> Option<Counterexample> {
    match actual {
        Ok(g) if g == expected => None,
        other => Some(Counterexample {
            instance: instance(),
            lhs: match other {
                Ok(g) => format!("grade {g}"),
                Err(e) => format!("error: {e}"),
            },
            rhs: format!("grade {expected}"),
        }),
    }
}

fn l(name: &str) -> Label {
    Label::new(name).expect("fixed label names are valid")
}

/// Runs one family: `exhaustive` indexed instances, then every
/// `stride`-th random instance starting at `offset`.
struct Runner {
    budget: Budget,
    stride: usize,
}

impl Runner {
    fn run<E, R>(
        &self,
        name: &str,
        offset: usize,
        exhaustive: usize,
        exh: E,
        rand: R,
    ) -> FamilyReport
    where
        E: Fn(usize) -> Option<Counterexample> + Sync + Send,
        R: Fn(&mut ChaCha8Rng) -> Option<Counterexample> + Sync + Send,
    {
        let exec = self.budget.exec;
        let (mut failures, mut first) = count_failures(exec, exhaustive, &exh);
        let randoms: Vec<u64> = (offset..self.budget.random)
            .step_by(self.stride)
            .map(|i| i as u64)
            .collect();
        let seed = self.budget.seed;
        let (rf, rfirst) = count_failures(exec, randoms.len(), &|j| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(randoms[j]);
            rand(&mut rng).map(|mut c| {
                c.instance = format!("[random #{}, seed {seed}] {}", randoms[j], c.instance);
                c
            })
        });
        failures += rf;
        if first.is_none() {
            first = rfirst;
        }
        FamilyReport {
            family: name.to_string(),
            exhaustive: exhaustive as u64,
            random: randoms.len() as u64,
            failures,
            counterexample: first,
        }
    }
}

fn count_failures<F>(exec: Execution, n: usize, f: &F) -> (u64, Option<Counterexample>)
where
    F: Fn(usize) -> Option<Counterexample> + Sync + Send,
{
    let failures = exec.sum(n, |i| u64::from(f(i).is_some()));
    let first = if failures > 0 {
        exec.find_first(n, f).map(|(_, c)| c)
    } else {
        None
    };
    (failures, first)
}

/// Elements of a source over `fixed ∪ {filler1, ...}` for every total size
/// up to `max`, smallest first.
struct Pool<E> {
    items: Vec<(Vec<Label>, E)>,
}

impl<E: Clone> Pool<E> {
    fn build<S: SampleSource<E>>(src: &S, fixed: &[&str], filler: &str, max: usize) -> Self {
        let mut items = Vec::new();
        for total in fixed.len()..=max.max(fixed.len()) {
            if total > max {
                break;
            }
            let labels = label_set(fixed, filler, total);
            for e in src.exhaustive(&labels) {
                items.push((labels.clone(), e));
            }
        }
        Pool { items }
    }

    fn len(&self) -> usize {
        self.items.len()
    }

    fn get(&self, i: usize) -> &(Vec<Label>, E) {
        &self.items[i]
    }

    /// `(item, permutation)` pairs over all permutations of each item's labels.
    fn with_perms(&self, perms: &[Vec<Vec<usize>>]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, (labels, _)) in self.items.iter().enumerate() {
            for p in 0..perms[labels.len()].len() {
                out.push((i, p));
            }
        }
        out
    }
}

/// An element renamed by a primed permutation of its labels, with the
/// image of the glued label and the renaming restricted to the others.
struct Renamed<E> {
    rho: Renaming,
    residual: Renaming,
    glued: Label,
    image: Result<E>,
}

impl<E> Renamed<E> {
    fn new<T: TargetOperad<Element = E>>(
        t: &T,
        labels: &[Label],
        q: &E,
        perm: &[usize],
        glued: &Label,
    ) -> Self {
        let rho = primed_permutation(labels, perm);
        let residual = rho
            .restrict(labels.iter().filter(|x| *x != glued))
            .expect("restriction");
        Renamed {
            glued: rho.apply(glued).expect("glued label is renamed"),
            image: t.rename(q, &rho),
            residual,
            rho,
        }
    }
}

fn random_labels(fixed: &[&str], filler: &str, max: usize, rng: &mut ChaCha8Rng) -> Vec<Label> {
    let lo = fixed.len();
    let hi = max.max(lo);
    label_set(fixed, filler, rng.gen_range(lo..=hi))
}

fn permutation_table(max: usize) -> Vec<Vec<Vec<usize>>> {
    (0..=max).map(permutations).collect()
}

pub const AXIOM_FAMILIES: [&str; 11] = [
    "1 compose-symmetry",
    "2 renaming-functoriality",
    "3 compose-equivariance",
    "4 contract-equivariance",
    "5 contract-commutation",
    "6 contract-compose-exchange",
    "7 contract-in-left-factor",
    "7' contract-in-right-factor",
    "8 compose-associativity",
    "grade-bookkeeping",
    "contract-symmetry",
];

/// Checks the eight modular-operad axiom families, grade bookkeeping and
/// symmetry of contraction on `target`.
///
/// Inputs are all sample elements with at most `budget.max_labels` labels
/// each; the glued labels carry the fixed names `a`, `b`, `c`, `d`.
pub fn check_axioms<T, S>(target: &T, samples: &S, budget: &Budget) -> CheckReport
where
    T: TargetOperad,
    S: SampleSource<T::Element>,
{
    let k = budget.max_labels;
    let rk = budget.random_max_labels;
    let perms = permutation_table(k);
    let run = Runner {
        budget: *budget,
        stride: AXIOM_FAMILIES.len(),
    };
    let (a, b, c, d) = (l("a"), l("b"), l("c"), l("d"));
    let t = target;
    let pool = |fixed: &[&str], filler: &str| Pool::build(samples, fixed, filler, k);
    let rand_elem = |fixed: &[&str], filler: &str, rng: &mut ChaCha8Rng| {
        let labels = random_labels(fixed, filler, rk, rng);
        let e = samples.random(&labels, rng);
        (labels, e)
    };

    let p_a = pool(&["a"], "x");
    let p_b = pool(&["b"], "y");
    let p_any = pool(&[], "x");
    let p_ab = pool(&["a", "b"], "x");
    let p_abcd = pool(&["a", "b", "c", "d"], "x");
    let p_ac = pool(&["a", "c"], "x");
    let p_bd = pool(&["b", "d"], "y");
    let p_acd = pool(&["a", "c", "d"], "x");
    let p_bcd = pool(&["b", "c", "d"], "y");
    let p_bc = pool(&["b", "c"], "y");
    let p_d = pool(&["d"], "z");

    let mut families = Vec::new();

    // 1. q ∘_{a,b} r = r ∘_{b,a} q
    let ax1 = |q: &T::Element, r: &T::Element| {
        compare(t.compose(q, &a, r, &b), t.compose(r, &b, q, &a), || {
            format!("q = {q}, r = {r}, q o_(a,b) r vs r o_(b,a) q")
        })
    };
    families.push(run.run(
        AXIOM_FAMILIES[0],
        0,
        p_a.len() * p_b.len(),
        |i| ax1(&p_a.get(i / p_b.len()).1, &p_b.get(i % p_b.len()).1),
        |rng| {
            let (_, q) = rand_elem(&["a"], "x", rng);
            let (_, r) = rand_elem(&["b"], "y", rng);
            ax1(&q, &r)
        },
    ));

    // 2. P(ρσ) = P(ρ)P(σ), P(1) = 1
    let ax2 = |labels: &[Label], q: &T::Element, s1: &[usize], s2: &[usize]| {
        let sigma = primed_permutation(labels, s1);
        let primes: Vec<Label> = labels.iter().map(primed).collect();
        let rho = primed_permutation(&primes, s2);
        let id = Renaming::identity(labels);
        if let Some(c) = compare(t.rename(q, &id), Ok(q.clone()), || {
            format!("q = {q}, identity renaming")
        }) {
            return Some(c);
        }
        let composite = rho
            .after(&sigma)
            .expect("codomain of sigma is the domain of rho");
        compare(
            t.rename(q, &sigma).and_then(|x| t.rename(&x, &rho)),
            t.rename(q, &composite),
            || format!("q = {q}, sigma = {sigma:?}, rho = {rho:?}"),
        )
    };
    let any_perm2: Vec<(usize, usize, usize)> = p_any
        .with_perms(&perms)
        .into_iter()
        .flat_map(|(i, p)| {
            let n = perms[p_any.get(i).0.len()].len();
            (0..n).map(move |p2| (i, p, p2))
        })
        .collect();
    families.push(run.run(
        AXIOM_FAMILIES[1],
        1,
        any_perm2.len(),
        |i| {
            let (qi, p1, p2) = any_perm2[i];
            let (labels, q) = p_any.get(qi);
            let table = &perms[labels.len()];
            ax2(labels, q, &table[p1], &table[p2])
        },
        |rng| {
            let (labels, q) = rand_elem(&[], "x", rng);
            let s1 = random_permutation(labels.len(), rng);
            let s2 = random_permutation(labels.len(), rng);
            ax2(&labels, &q, &s1, &s2)
        },
    ));

    // 3. P(ρ|C1 ⊔ σ|C2)(q ∘_{a,b} r) = P(ρ)q ∘_{ρa,σb} P(σ)r
    let ax3 = |q: &T::Element,
               r: &T::Element,
               qr: Result<T::Element>,
               pq: &Renamed<T::Element>,
               pr: &Renamed<T::Element>| {
        let outer = pq.residual.disjoint_union(&pr.residual).expect("disjoint");
        compare(
            qr.and_then(|x| t.rename(&x, &outer)),
            pq.image
                .clone()
                .and_then(|x| Ok((x, pr.image.clone()?)))
                .and_then(|(x, y)| t.compose(&x, &pq.glued, &y, &pr.glued)),
            || format!("q = {q}, r = {r}, rho = {:?}, sigma = {:?}", pq.rho, pr.rho),
        )
    };
    let a_perm: Vec<(usize, Renamed<T::Element>)> = {
        let pairs = p_a.with_perms(&perms);
        let data = budget.exec.map(&pairs, |&(i, p)| {
            let (labels, q) = p_a.get(i);
            Renamed::new(t, labels, q, &perms[labels.len()][p], &a)
        });
        pairs.into_iter().map(|(i, _)| i).zip(data).collect()
    };
    let b_perm: Vec<(usize, Renamed<T::Element>)> = {
        let pairs = p_b.with_perms(&perms);
        let data = budget.exec.map(&pairs, |&(i, p)| {
            let (labels, r) = p_b.get(i);
            Renamed::new(t, labels, r, &perms[labels.len()][p], &b)
        });
        pairs.into_iter().map(|(i, _)| i).zip(data).collect()
    };
    let nb = p_b.len();
    let products = budget.exec.map_range(p_a.len() * nb, |j| {
        t.compose(&p_a.get(j / nb).1, &a, &p_b.get(j % nb).1, &b)
    });
    families.push(run.run(
        AXIOM_FAMILIES[2],
        2,
        a_perm.len() * b_perm.len(),
        |i| {
            let (qi, pq) = &a_perm[i / b_perm.len()];
            let (ri, pr) = &b_perm[i % b_perm.len()];
            let qr = products[qi * nb + ri].clone();
            ax3(&p_a.get(*qi).1, &p_b.get(*ri).1, qr, pq, pr)
        },
        |rng| {
            let (lq, q) = rand_elem(&["a"], "x", rng);
            let (lr, r) = rand_elem(&["b"], "y", rng);
            let pq = random_permutation(lq.len(), rng);
            let pr = random_permutation(lr.len(), rng);
            let qr = t.compose(&q, &a, &r, &b);
            ax3(
                &q,
                &r,
                qr,
                &Renamed::new(t, &lq, &q, &pq, &a),
                &Renamed::new(t, &lr, &r, &pr, &b),
            )
        },
    ));

    // 4. P(ρ|C) ξ_{ab} = ξ_{ρa,ρb} P(ρ)
    let ax4 = |lq: &[Label], q: &T::Element, p: &[usize]| {
        let rho = primed_permutation(lq, p);
        let residual: Vec<Label> = lq
            .iter()
            .filter(|x| **x != a && **x != b)
            .cloned()
            .collect();
        let outer = rho.restrict(&residual).expect("restriction");
        let (ra, rb) = (rho.apply(&a).expect("a"), rho.apply(&b).expect("b"));
        compare(
            t.contract(q, &a, &b).and_then(|x| t.rename(&x, &outer)),
            t.rename(q, &rho).and_then(|x| t.contract(&x, &ra, &rb)),
            || format!("q = {q}, rho = {rho:?}"),
        )
    };
    let ab_perm = p_ab.with_perms(&perms);
    families.push(run.run(
        AXIOM_FAMILIES[3],
        3,
        ab_perm.len(),
        |i| {
            let (qi, p) = ab_perm[i];
            let (lq, q) = p_ab.get(qi);
            ax4(lq, q, &perms[lq.len()][p])
        },
        |rng| {
            let (lq, q) = rand_elem(&["a", "b"], "x", rng);
            let p = random_permutation(lq.len(), rng);
            ax4(&lq, &q, &p)
        },
    ));

    // 5. ξ_{ab} ξ_{cd} = ξ_{cd} ξ_{ab}
    let ax5 = |q: &T::Element| {
        compare(
            t.contract(q, &c, &d).and_then(|x| t.contract(&x, &a, &b)),
            t.contract(q, &a, &b).and_then(|x| t.contract(&x, &c, &d)),
            || format!("q = {q}, xi_ab xi_cd vs xi_cd xi_ab"),
        )
    };
    families.push(run.run(
        AXIOM_FAMILIES[4],
        4,
        p_abcd.len(),
        |i| ax5(&p_abcd.get(i).1),
        |rng| ax5(&rand_elem(&["a", "b", "c", "d"], "x", rng).1),
    ));

    // 6. ξ_{ab} ∘_{c,d} = ξ_{cd} ∘_{a,b}
    let ax6 = |q: &T::Element, r: &T::Element| {
        compare(
            t.compose(q, &c, r, &d).and_then(|x| t.contract(&x, &a, &b)),
            t.compose(q, &a, r, &b).and_then(|x| t.contract(&x, &c, &d)),
            || format!("q = {q}, r = {r}, xi_ab (q o_(c,d) r) vs xi_cd (q o_(a,b) r)"),
        )
    };
    families.push(run.run(
        AXIOM_FAMILIES[5],
        5,
        p_ac.len() * p_bd.len(),
        |i| ax6(&p_ac.get(i / p_bd.len()).1, &p_bd.get(i % p_bd.len()).1),
        |rng| {
            let (_, q) = rand_elem(&["a", "c"], "x", rng);
            let (_, r) = rand_elem(&["b", "d"], "y", rng);
            ax6(&q, &r)
        },
    ));

    // 7. ∘_{a,b}(ξ_{cd} ⊗ 1) = ξ_{cd} ∘_{a,b}
    let ax7 = |q: &T::Element, r: &T::Element| {
        compare(
            t.contract(q, &c, &d).and_then(|x| t.compose(&x, &a, r, &b)),
            t.compose(q, &a, r, &b).and_then(|x| t.contract(&x, &c, &d)),
            || format!("q = {q}, r = {r}, (xi_cd q) o_(a,b) r vs xi_cd (q o_(a,b) r)"),
        )
    };
    families.push(run.run(
        AXIOM_FAMILIES[6],
        6,
        p_acd.len() * p_b.len(),
        |i| ax7(&p_acd.get(i / p_b.len()).1, &p_b.get(i % p_b.len()).1),
        |rng| {
            let (_, q) = rand_elem(&["a", "c", "d"], "x", rng);
            let (_, r) = rand_elem(&["b"], "y", rng);
            ax7(&q, &r)
        },
    ));

    // 7'. ∘_{a,b}(1 ⊗ ξ_{cd}) = ξ_{cd} ∘_{a,b}
    let ax7m = |q: &T::Element, r: &T::Element| {
        compare(
            t.contract(r, &c, &d).and_then(|y| t.compose(q, &a, &y, &b)),
            t.compose(q, &a, r, &b).and_then(|x| t.contract(&x, &c, &d)),
            || format!("q = {q}, r = {r}, q o_(a,b) (xi_cd r) vs xi_cd (q o_(a,b) r)"),
        )
    };
    families.push(run.run(
        AXIOM_FAMILIES[7],
        7,
        p_a.len() * p_bcd.len(),
        |i| ax7m(&p_a.get(i / p_bcd.len()).1, &p_bcd.get(i % p_bcd.len()).1),
        |rng| {
            let (_, q) = rand_elem(&["a"], "x", rng);
            let (_, r) = rand_elem(&["b", "c", "d"], "y", rng);
            ax7m(&q, &r)
        },
    ));

    // 8. ∘_{a,b}(1 ⊗ ∘_{c,d}) = ∘_{c,d}(∘_{a,b} ⊗ 1)
    let ax8 = |p: &T::Element, q: &T::Element, r: &T::Element| {
        compare(
            t.compose(q, &c, r, &d)
                .and_then(|y| t.compose(p, &a, &y, &b)),
            t.compose(p, &a, q, &b)
                .and_then(|x| t.compose(&x, &c, r, &d)),
            || {
                format!(
                    "p = {p}, q = {q}, r = {r}, p o_(a,b) (q o_(c,d) r) vs (p o_(a,b) q) o_(c,d) r"
                )
            },
        )
    };
    let (n2, n3) = (p_bc.len(), p_d.len());
    // inner products, shared by every outer factor
    let qr = budget.exec.map_range(n2 * n3, |j| {
        t.compose(&p_bc.get(j / n3).1, &c, &p_d.get(j % n3).1, &d)
    });
    let pq = budget.exec.map_range(p_a.len() * n2, |j| {
        t.compose(&p_a.get(j / n2).1, &a, &p_bc.get(j % n2).1, &b)
    });
    families.push(run.run(
        AXIOM_FAMILIES[8],
        8,
        p_a.len() * n2 * n3,
        |i| {
            let (pi, qi, ri) = (i / (n2 * n3), (i / n3) % n2, i % n3);
            let (p, q, r) = (&p_a.get(pi).1, &p_bc.get(qi).1, &p_d.get(ri).1);
            compare(
                qr[qi * n3 + ri].clone().and_then(|y| t.compose(p, &a, &y, &b)),
                pq[pi * n2 + qi].clone().and_then(|x| t.compose(&x, &c, r, &d)),
                || format!("p = {p}, q = {q}, r = {r}, p o_(a,b) (q o_(c,d) r) vs (p o_(a,b) q) o_(c,d) r"),
            )
        },
        |rng| {
            let (_, p) = rand_elem(&["a"], "x", rng);
            let (_, q) = rand_elem(&["b", "c"], "y", rng);
            let (_, r) = rand_elem(&["d"], "z", rng);
            ax8(&p, &q, &r)
        },
    ));

    // grades: ∘ adds, ξ adds one
    let grade_compose = |q: &T::Element, r: &T::Element| {
        expect_grade(
            t.compose(q, &a, r, &b).map(|x| t.grade(&x)),
            t.grade(q) + t.grade(r),
            || format!("q = {q}, r = {r}, q o_(a,b) r"),
        )
    };
    let grade_contract = |q: &T::Element| {
        expect_grade(
            t.contract(q, &a, &b).map(|x| t.grade(&x)),
            t.grade(q) + 1,
            || format!("q = {q}, xi_ab q"),
        )
    };
    let pairs = p_a.len() * p_b.len();
    families.push(run.run(
        AXIOM_FAMILIES[9],
        9,
        pairs + p_ab.len(),
        |i| {
            if i < pairs {
                grade_compose(&p_a.get(i / p_b.len()).1, &p_b.get(i % p_b.len()).1)
            } else {
                grade_contract(&p_ab.get(i - pairs).1)
            }
        },
        |rng| {
            if rng.gen_bool(0.5) {
                let (_, q) = rand_elem(&["a"], "x", rng);
                let (_, r) = rand_elem(&["b"], "y", rng);
                grade_compose(&q, &r)
            } else {
                grade_contract(&rand_elem(&["a", "b"], "x", rng).1)
            }
        },
    ));

    // ξ_{ab} = ξ_{ba}
    let sym = |q: &T::Element| {
        compare(t.contract(q, &a, &b), t.contract(q, &b, &a), || {
            format!("q = {q}, xi_ab vs xi_ba")
        })
    };
    families.push(run.run(
        AXIOM_FAMILIES[10],
        10,
        p_ab.len(),
        |i| sym(&p_ab.get(i).1),
        |rng| sym(&rand_elem(&["a", "b"], "x", rng).1),
    ));

    CheckReport {
        check: "modular operad axioms".into(),
        target: target.name(),
        families,
    }
}

/// Checks that `f` commutes with splicing and renaming, and lands in grade 0
/// on the label set of its argument.
pub fn check_cyclic_morphism<T, F>(target: &T, f: &F, budget: &Budget) -> CheckReport
where
    T: TargetOperad,
    F: AssMorphism<T> + ?Sized,
{
    let k = budget.max_labels;
    let rk = budget.random_max_labels;
    let perms = permutation_table(k);
    let run = Runner {
        budget: *budget,
        stride: 3,
    };
    let (a, b) = (l("a"), l("b"));
    let t = target;
    let p_a = Pool::build(&WordSamples, &["a"], "x", k);
    let p_b = Pool::build(&WordSamples, &["b"], "y", k);
    let p_any = Pool::build(&WordSamples, &[], "x", k);
    let rand_word = |fixed: &[&str], filler: &str, rng: &mut ChaCha8Rng| {
        let labels = random_labels(fixed, filler, rk, rng);
        let w = WordSamples.random(&labels, rng);
        (labels, w)
    };

    let mut families = Vec::new();
    let compose = |x: &AssElement, y: &AssElement| {
        compare(
            x.compose(&a, y, &b).and_then(|z| f(&z)),
            f(x).and_then(|fx| Ok((fx, f(y)?)))
                .and_then(|(fx, fy)| t.compose(&fx, &a, &fy, &b)),
            || format!("x = {x}, y = {y}, f(x o_(a,b) y) vs f(x) o_(a,b) f(y)"),
        )
    };
    families.push(run.run(
        "compose",
        0,
        p_a.len() * p_b.len(),
        |i| compose(&p_a.get(i / p_b.len()).1, &p_b.get(i % p_b.len()).1),
        |rng| {
            compose(
                &rand_word(&["a"], "x", rng).1,
                &rand_word(&["b"], "y", rng).1,
            )
        },
    ));

    let rename = |labels: &[Label], x: &AssElement, p: &[usize]| {
        let rho = primed_permutation(labels, p);
        compare(
            x.rename(&rho).and_then(|y| f(&y)),
            f(x).and_then(|fx| t.rename(&fx, &rho)),
            || format!("x = {x}, rho = {rho:?}, f(rho x) vs rho f(x)"),
        )
    };
    let any_perm = p_any.with_perms(&perms);
    families.push(run.run(
        "rename",
        1,
        any_perm.len(),
        |i| {
            let (xi, p) = any_perm[i];
            let (labels, x) = p_any.get(xi);
            rename(labels, x, &perms[labels.len()][p])
        },
        |rng| {
            let (labels, x) = rand_word(&[], "x", rng);
            let p = random_permutation(labels.len(), rng);
            rename(&labels, &x, &p)
        },
    ));

    let typed = |x: &AssElement| match f(x) {
        Ok(fx) if t.labels(&fx) == x.labels() && t.grade(&fx) == 0 => None,
        other => Some(Counterexample {
            instance: format!("x = {x}"),
            lhs: show(&other),
            rhs: format!("an element on {x} of grade 0"),
        }),
    };
    families.push(run.run(
        "labels-and-grade",
        2,
        p_any.len(),
        |i| typed(&p_any.get(i).1),
        |rng| typed(&rand_word(&[], "x", rng).1),
    ));

    CheckReport {
        check: "cyclic morphism".into(),
        target: target.name(),
        families,
    }
}

/// Outcome of evaluating `f̃(q)` along every canonical expression of `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellDefinedness {
    pub surface: String,
    pub expressions: usize,
    pub agree: bool,
    pub value: Option<String>,
    pub disagreement: Option<Counterexample>,
}

pub fn check_well_definedness<T, F>(target: &T, f: &F, q: &Surface) -> WellDefinedness
where
    T: TargetOperad,
    F: AssMorphism<T> + ?Sized,
{
    let exprs = all_canonical_diagrams(q);
    let mut first: Option<(String, Result<T::Element>)> = None;
    let mut disagreement = None;
    for e in &exprs {
        let v = tilde_f_along(target, f, e);
        match &first {
            None => first = Some((e.diagram().to_string(), v)),
            Some((d0, v0)) => {
                let same = matches!((v0, &v), (Ok(x), Ok(y)) if x == y);
                if !same && disagreement.is_none() {
                    disagreement = Some(Counterexample {
                        instance: format!("q = {q}, along {d0} and {}", e.diagram()),
                        lhs: show(v0),
                        rhs: show(&v),
                    });
                }
            }
        }
    }
    let value = first
        .as_ref()
        .and_then(|(_, v)| v.as_ref().ok())
        .map(ToString::to_string);
    let ok = first.as_ref().is_some_and(|(_, v)| v.is_ok());
    WellDefinedness {
        surface: q.to_string(),
        expressions: exprs.len(),
        agree: ok && disagreement.is_none(),
        value,
        disagreement,
    }
}

/// Checks that `f̃` commutes with renaming, gluing and both kinds of
/// self-gluing, and preserves labels and grade.
pub fn check_modular_morphism<T, F>(
    target: &T,
    f: &F,
    samples: &SurfaceSamples,
    budget: &Budget,
) -> CheckReport
where
    T: TargetOperad,
    F: AssMorphism<T> + ?Sized,
{
    let k = budget.max_labels;
    let rk = budget.random_max_labels;
    let perms = permutation_table(k);
    let run = Runner {
        budget: *budget,
        stride: 5,
    };
    let (a, b) = (l("a"), l("b"));
    let t = target;
    let p_a = Pool::build(samples, &["a"], "x", k);
    let p_b = Pool::build(samples, &["b"], "y", k);
    let p_any = Pool::build(samples, &[], "x", k);
    let p_ab = Pool::build(samples, &["a", "b"], "x", k);
    let exec = budget.exec;
    let tilde = |p: &Pool<Surface>| exec.map(&p.items, |(_, q)| tilde_f(t, f, q));
    let (f_a, f_b, f_any, f_ab) = (tilde(&p_a), tilde(&p_b), tilde(&p_any), tilde(&p_ab));
    let rand_surface = |fixed: &[&str], filler: &str, rng: &mut ChaCha8Rng| {
        let labels = random_labels(fixed, filler, rk, rng);
        let q = samples.random(&labels, rng);
        (labels, q)
    };
    let lift = |r: &Result<T::Element>| -> Result<T::Element> { r.clone() };

    let mut families = Vec::new();

    let rename = |labels: &[Label], q: &Surface, fq: Result<T::Element>, p: &[usize]| {
        let rho = primed_permutation(labels, p);
        compare(
            q.rename(&rho).and_then(|x| tilde_f(t, f, &x)),
            fq.and_then(|x| t.rename(&x, &rho)),
            || format!("q = {q}, rho = {rho:?}, f~(rho q) vs rho f~(q)"),
        )
    };
    let any_perm = p_any.with_perms(&perms);
    families.push(run.run(
        "rename",
        0,
        any_perm.len(),
        |i| {
            let (qi, p) = any_perm[i];
            let (labels, q) = p_any.get(qi);
            rename(labels, q, lift(&f_any[qi]), &perms[labels.len()][p])
        },
        |rng| {
            let (labels, q) = rand_surface(&[], "x", rng);
            let p = random_permutation(labels.len(), rng);
            rename(&labels, &q, tilde_f(t, f, &q), &p)
        },
    ));

    let compose = |q: &Surface, fq: Result<T::Element>, r: &Surface, fr: Result<T::Element>| {
        compare(
            q.compose(&a, r, &b).and_then(|x| tilde_f(t, f, &x)),
            fq.and_then(|x| Ok((x, fr?)))
                .and_then(|(x, y)| t.compose(&x, &a, &y, &b)),
            || format!("q = {q}, r = {r}, f~(q o_(a,b) r) vs f~(q) o_(a,b) f~(r)"),
        )
    };
    families.push(run.run(
        "compose",
        1,
        p_a.len() * p_b.len(),
        |i| {
            let (qi, ri) = (i / p_b.len(), i % p_b.len());
            compose(
                &p_a.get(qi).1,
                lift(&f_a[qi]),
                &p_b.get(ri).1,
                lift(&f_b[ri]),
            )
        },
        |rng| {
            let (_, q) = rand_surface(&["a"], "x", rng);
            let (_, r) = rand_surface(&["b"], "y", rng);
            compose(&q, tilde_f(t, f, &q), &r, tilde_f(t, f, &r))
        },
    ));

    let contract = |q: &Surface, fq: Result<T::Element>| {
        compare(
            q.self_glue(&a, &b).and_then(|x| tilde_f(t, f, &x)),
            fq.and_then(|x| t.contract(&x, &a, &b)),
            || format!("q = {q}, f~(xi_ab q) vs xi_ab f~(q)"),
        )
    };
    let same_cycle = |q: &Surface| q.cycles().iter().any(|c| c.contains(&a) && c.contains(&b));
    let split_idx: Vec<usize> = (0..p_ab.len())
        .filter(|&i| same_cycle(&p_ab.get(i).1))
        .collect();
    let merge_idx: Vec<usize> = (0..p_ab.len())
        .filter(|&i| !same_cycle(&p_ab.get(i).1))
        .collect();
    for (offset, name, idx, want_same) in [
        (2, "contract-split", &split_idx, true),
        (3, "contract-merge", &merge_idx, false),
    ] {
        families.push(run.run(
            name,
            offset,
            idx.len(),
            |i| contract(&p_ab.get(idx[i]).1, lift(&f_ab[idx[i]])),
            |rng| {
                // draw until the pair sits as required
                loop {
                    let (_, q) = rand_surface(&["a", "b"], "x", rng);
                    if same_cycle(&q) == want_same {
                        return contract(&q, tilde_f(t, f, &q));
                    }
                }
            },
        ));
    }

    let typed = |q: &Surface, fq: Result<T::Element>| match fq {
        Ok(x) if t.grade(&x) == q.grade() && t.labels(&x) == q.labels() => None,
        other => Some(Counterexample {
            instance: format!("q = {q}"),
            lhs: show(&other),
            rhs: format!("an element on the labels of q of grade {}", q.grade()),
        }),
    };
    families.push(run.run(
        "labels-and-grade",
        4,
        p_any.len(),
        |i| typed(&p_any.get(i).1, lift(&f_any[i])),
        |rng| {
            let (_, q) = rand_surface(&[], "x", rng);
            typed(&q, tilde_f(t, f, &q))
        },
    ));

    CheckReport {
        check: "modular morphism".into(),
        target: target.name(),
        families,
    }
}

/// The value `f̃(q)` should take.
pub type Expected<'a, E> = &'a (dyn Fn(&Surface) -> E + Sync);

/// Well-definedness over a family of surfaces: every canonical expression
/// gives the same value, and (when `expect_identity`) that value is `q`
/// itself.
pub fn check_well_definedness_family<T, F>(
    target: &T,
    f: &F,
    family: &[Surface],
    exec: Execution,
    expected: Option<Expected<'_, T::Element>>,
) -> FamilyReport
where
    T: TargetOperad,
    F: AssMorphism<T> + ?Sized,
{
    let outcome = |i: usize| -> Option<Counterexample> {
        let q = &family[i];
        let exprs = all_canonical_diagrams(q);
        let want = expected.map(|e| e(q));
        let mut reference: Option<Result<T::Element>> = want.map(Ok);
        for e in &exprs {
            let v = tilde_f_along(target, f, e);
            match &reference {
                None => reference = Some(v),
                Some(r) => {
                    if let Some(c) =
                        compare(r.clone(), v, || format!("q = {q}, along {}", e.diagram()))
                    {
                        return Some(c);
                    }
                }
            }
        }
        None
    };
    let (failures, first) = count_failures(exec, family.len(), &outcome);
    FamilyReport {
        family: if expected.is_some() {
            "well-defined-and-expected".into()
        } else {
            "well-defined".into()
        },
        exhaustive: family.len() as u64,
        random: 0,
        failures,
        counterexample: first,
    }
}

/// Family sizes for [`check_envelope`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnvelopeBounds {
    pub max_labels: usize,
    pub max_genus: u32,
    pub max_boundaries: usize,
}

/// The universal property of the envelope on a finite family: canonical
/// expressions evaluate back to their surface, `f̃` is independent of the
/// expression, the extension of the inclusion is the identity, the terminal
/// extension lands on the right point, and both extensions are modular
/// morphisms.
pub fn check_envelope(bounds: EnvelopeBounds, budget: &Budget) -> CheckReport {
    let family = surface_family(bounds.max_labels, bounds.max_genus, bounds.max_boundaries);
    let exec = budget.exec;
    let mut families = Vec::new();

    let round_trip = |i: usize| {
        let q = &family[i];
        all_canonical_diagrams(q).into_iter().find_map(|e| {
            compare(Ok(e.diagram().evaluate()), Ok(q.clone()), || {
                format!("evaluate({})", e.diagram())
            })
        })
    };
    let (failures, first) = count_failures(exec, family.len(), &round_trip);
    families.push(FamilyReport {
        family: "canonical-round-trip".into(),
        exhaustive: family.len() as u64,
        random: 0,
        failures,
        counterexample: first,
    });

    let qo = QoTarget::standard();
    let identity = |q: &Surface| q.clone();
    let mut fam = check_well_definedness_family(&qo, &inclusion, &family, exec, Some(&identity));
    fam.family = "qo: well-defined, extension is identity".into();
    families.push(fam);

    let point = |q: &Surface| Point {
        labels: q.labels(),
        grade: q.grade(),
    };
    let mut fam =
        check_well_definedness_family(&Terminal, &to_terminal, &family, exec, Some(&point));
    fam.family = "terminal: well-defined, unique point".into();
    families.push(fam);

    let samples = SurfaceSamples::new(bounds.max_genus).with_boundaries(bounds.max_boundaries);
    let morphism = Budget {
        max_labels: bounds.max_labels,
        ..*budget
    };
    for (prefix, report) in [
        (
            "qo",
            check_modular_morphism(&qo, &inclusion, &samples, &morphism),
        ),
        (
            "terminal",
            check_modular_morphism(&Terminal, &to_terminal, &samples, &morphism),
        ),
    ] {
        families.extend(report.families.into_iter().map(|mut f| {
            f.family = format!("{prefix}: morphism {}", f.family);
            f
        }));
    }

    CheckReport {
        check: "modular envelope".into(),
        target: "qo, terminal".into(),
        families,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::samples::PointSamples;
    use crate::surface::Mutation;

    fn small() -> Budget {
        Budget::exhaustive(3)
    }

    #[test]
    fn qo_axioms_small() {
        let report = check_axioms(
            &QoTarget::standard(),
            &SurfaceSamples::new(1).with_boundaries(3),
            &small(),
        );
        assert!(report.passed(), "{report}");
        assert_eq!(report.families.len(), AXIOM_FAMILIES.len());
        // four distinguished labels do not fit in three
        assert!(
            report
                .families
                .iter()
                .all(|f| (f.exhaustive > 0) != f.family.starts_with('5')),
            "{report}"
        );
    }

    #[test]
    fn terminal_axioms() {
        let report = check_axioms(
            &Terminal,
            &PointSamples { max_grade: 2 },
            &small().with_random(200, 1),
        );
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn merge_mutant_caught_by_grades() {
        let report = check_axioms(
            &QoTarget::mutated(Mutation::MergeGenusDropped),
            &SurfaceSamples::new(1),
            &small(),
        );
        assert!(!report.passed());
        assert!(!report.family("grade-bookkeeping").unwrap().passed());
    }

    #[test]
    fn compose_mutant_caught() {
        let report = check_axioms(
            &QoTarget::mutated(Mutation::ComposeGenusDropped),
            &SurfaceSamples::new(1),
            &small(),
        );
        assert!(
            !report.family("1 compose-symmetry").unwrap().passed(),
            "{report}"
        );
    }

    #[test]
    fn cyclic_morphisms() {
        let b = small().with_random(100, 3);
        assert!(check_cyclic_morphism(&QoTarget::standard(), &inclusion, &b).passed());
        assert!(check_cyclic_morphism(&Terminal, &to_terminal, &b).passed());
        let reversed = |x: &AssElement| Ok(x.include().reversed());
        assert!(check_cyclic_morphism(&QoTarget::standard(), &reversed, &b).passed());
    }

    #[test]
    fn renamed_inclusion_is_not_a_morphism() {
        // swap the two smallest labels of every word
        let swapped = |x: &AssElement| {
            let ls: Vec<Label> = x.labels().into_iter().collect();
            let mut perm: Vec<usize> = (0..ls.len()).collect();
            if ls.len() >= 2 {
                perm.swap(0, 1);
            }
            Ok(
                x.rename(&super::super::samples::permutation_renaming(&ls, &perm))?
                    .include(),
            )
        };
        let report = check_cyclic_morphism(&QoTarget::standard(), &swapped, &Budget::exhaustive(4));
        assert!(!report.passed());
    }

    #[test]
    fn well_definedness_examples() {
        let q: Surface = "{ ( 1 ) ( 2 ) }^1".parse().unwrap();
        let w = check_well_definedness(&QoTarget::standard(), &inclusion, &q);
        assert_eq!(w.expressions, 2);
        assert!(w.agree);
        assert_eq!(w.value.as_deref(), Some("{ ( 1 ) ( 2 ) }^1"));
        let w = check_well_definedness(&Terminal, &to_terminal, &q);
        assert!(w.agree);
        let q: Surface = "{ ( 1 2 3 ) }^2".parse().unwrap();
        let w = check_well_definedness(&QoTarget::standard(), &inclusion, &q);
        assert_eq!(w.expressions, 3);
        assert!(w.agree);
    }

    #[test]
    fn modular_morphisms() {
        let samples = SurfaceSamples::new(1).with_boundaries(3);
        let b = small().with_random(100, 9);
        let r = check_modular_morphism(&QoTarget::standard(), &inclusion, &samples, &b);
        assert!(r.passed(), "{r}");
        assert!(r.family("contract-split").unwrap().exhaustive > 0);
        assert!(r.family("contract-merge").unwrap().exhaustive > 0);
        let r = check_modular_morphism(&Terminal, &to_terminal, &samples, &b);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn envelope_small() {
        let bounds = EnvelopeBounds {
            max_labels: 2,
            max_genus: 1,
            max_boundaries: 2,
        };
        let r = check_envelope(bounds, &Budget::default());
        assert!(r.passed(), "{r}");
        assert_eq!(r.families.len(), 3 + 2 * 5);
    }

    #[test]
    fn reports_are_deterministic() {
        let m = QoTarget::mutated(Mutation::ComposeGenusDropped);
        let samples = SurfaceSamples::new(1);
        let seq = check_axioms(
            &m,
            &samples,
            &small().with_random(300, 5).with_exec(Execution::Sequential),
        );
        let par = check_axioms(
            &m,
            &samples,
            &small().with_random(300, 5).with_exec(Execution::Parallel),
        );
        assert_eq!(seq, par);
    }
}
