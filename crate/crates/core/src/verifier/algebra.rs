use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::CheckRecord;
use crate::galois_ring::{FieldElement, RingContext, RingElement, TeichExp};

/// How many cases a property sweep covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Budget {
    /// Every element, pair or triple where that is at most a few million cases.
    Exhaustive,
    /// This many seeded random cases.
    Random(u64),
}

/// Random cases used for triples even under [`Budget::Exhaustive`] once the ring has more
/// than 64 elements.
const TRIPLE_SAMPLES: u64 = 100_000;

type Cases<'a, T> = Box<dyn Iterator<Item = T> + 'a>;

fn sweep<T>(rec: &mut CheckRecord, cases: Cases<'_, T>, check: impl Fn(T) -> Option<String>) {
    let (mut total, mut failures) = (0u64, 0u64);
    for case in cases {
        total += 1;
        if let Some(w) = check(case) {
            failures += 1;
            rec.fail(w);
        }
    }
    rec.count("cases", total);
    rec.count("failures", failures);
}

struct Sampler<'a> {
    ctx: &'a RingContext,
    rng: ChaCha8Rng,
}

impl Sampler<'_> {
    fn ring(&mut self) -> RingElement {
        RingElement::from_index(self.rng.gen_range(0..self.ctx.ring_size()), self.ctx.delta())
    }

    fn field(&mut self) -> FieldElement {
        FieldElement::from_bits(self.rng.gen_range(0..1u32 << self.ctx.delta()) as u16)
    }

    fn teich(&mut self) -> TeichExp {
        match self.rng.gen_range(0..=self.ctx.order()) {
            0 => TeichExp::Zero,
            k => TeichExp::Pow(k - 1),
        }
    }
}

fn teich_all(ctx: &RingContext) -> impl Iterator<Item = TeichExp> + '_ {
    std::iter::once(TeichExp::Zero).chain((0..ctx.order()).map(TeichExp::Pow))
}

/// Ring axioms, Frobenius identities, Teichmüller sum formula, the trace shift identity and
/// Artin-Schreier solution counts.
pub fn algebra_suite(ctx: &RingContext, budget: Budget, seed: u64) -> Vec<CheckRecord> {
    let delta = ctx.delta();
    let sampler = |salt: u64| Sampler { ctx, rng: ChaCha8Rng::seed_from_u64(seed ^ salt) };
    let scope = match budget {
        Budget::Exhaustive => "exhaustive".to_string(),
        Budget::Random(k) => format!("{k} random cases"),
    };
    let mut out = Vec::new();

    out.push(CheckRecord::timed("ring_axioms", delta, scope.clone(), |rec| {
        let cases: Cases<(RingElement, RingElement, RingElement)> = match budget {
            Budget::Exhaustive if ctx.ring_size() <= 64 => Box::new(ctx.elements().flat_map(move |a| {
                ctx.elements().flat_map(move |b| ctx.elements().map(move |c| (a, b, c)))
            })),
            _ => {
                let k = if let Budget::Random(k) = budget { k } else { TRIPLE_SAMPLES };
                let mut s = sampler(1);
                Box::new((0..k).map(move |_| (s.ring(), s.ring(), s.ring())))
            }
        };
        sweep(rec, cases, |(a, b, c)| {
            let ok = ctx.mul(a, b) == ctx.mul(b, a)
                && ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
                && ctx.mul(a, b + c) == ctx.mul(a, b) + ctx.mul(a, c)
                && (a + b) + c == a + (b + c)
                && ctx.mul(a, RingElement::ONE) == a
                && a + (-a) == RingElement::ZERO;
            (!ok).then(|| format!("axiom fails at ({a:?}, {b:?}, {c:?})"))
        });
        let xi_order = (1..=ctx.order()).find(|&k| ctx.xi_pow(i64::from(k)) == RingElement::ONE);
        rec.expect_count("xi_order", u64::from(xi_order.unwrap_or(0)), u64::from(ctx.order()));
    }));

    out.push(CheckRecord::timed("frobenius_automorphism", delta, scope.clone(), |rec| {
        let cases: Cases<(RingElement, RingElement)> = match budget {
            Budget::Exhaustive => Box::new(ctx.elements().flat_map(move |a| ctx.elements().map(move |b| (a, b)))),
            Budget::Random(k) => {
                let mut s = sampler(2);
                Box::new((0..k).map(move |_| (s.ring(), s.ring())))
            }
        };
        sweep(rec, cases, |(a, b)| {
            let f = |x| ctx.frobenius(x);
            let ok = f(a + b) == f(a) + f(b) && f(ctx.mul(a, b)) == ctx.mul(f(a), f(b));
            (!ok).then(|| format!("frobenius is not a homomorphism at ({a:?}, {b:?})"))
        });
        if ctx.frobenius(ctx.xi()) != ctx.xi_pow(2) {
            rec.fail("f(xi) != xi^2".into());
        }
        for c in [RingElement::ONE, RingElement::ONE.double()] {
            if ctx.frobenius(c) != c {
                rec.fail(format!("f moves the constant {c:?}"));
            }
        }
    }));

    out.push(CheckRecord::timed("frobenius_order", delta, scope.clone(), |rec| {
        let cases: Cases<RingElement> = match budget {
            Budget::Exhaustive => Box::new(ctx.elements()),
            Budget::Random(k) => {
                let mut s = sampler(3);
                Box::new((0..k).map(move |_| s.ring()))
            }
        };
        sweep(rec, cases, |a| {
            let fixed = (0..delta).fold(a, |x, _| ctx.frobenius(x)) == a;
            (!fixed).then(|| format!("f^{delta}({a:?}) != {a:?}"))
        });
        // no smaller power is the identity on xi
        if let Some(l) = (1..delta).find(|&l| ctx.frobenius_pow(ctx.xi(), l) == ctx.xi()) {
            rec.fail(format!("f^{l} fixes xi"));
        }
    }));

    out.push(CheckRecord::timed("teichmuller_sum", delta, scope.clone(), |rec| {
        let cases: Cases<(TeichExp, TeichExp)> = match budget {
            Budget::Exhaustive => Box::new(teich_all(ctx).flat_map(move |a| teich_all(ctx).map(move |b| (a, b)))),
            Budget::Random(k) => {
                let mut s = sampler(4);
                Box::new((0..k).map(move |_| (s.teich(), s.teich())))
            }
        };
        sweep(rec, cases, |(c1, c2)| {
            let closed = ctx.yamada_sum(c1, c2);
            let direct = ctx.teich_decompose(ctx.teich(c1) + ctx.teich(c2));
            (closed != direct).then(|| format!("({c1:?}, {c2:?}): closed form {closed:?}, direct {direct:?}"))
        });
    }));

    out.push(CheckRecord::timed("trace_shift_identity", delta, scope.clone(), |rec| {
        let fields = move || ctx.field_elements();
        let cases: Cases<(FieldElement, FieldElement)> = match budget {
            Budget::Exhaustive => Box::new(fields().flat_map(move |a| fields().map(move |b| (a, b)))),
            Budget::Random(k) => {
                let mut s = sampler(5);
                Box::new((0..k).map(move |_| (s.field(), s.field())))
            }
        };
        let one = FieldElement::ONE;
        sweep(rec, cases, |(y1, y2)| {
            let shifted = ctx.trace(ctx.field_mul(y1 + one, y2 + one));
            let expanded = (ctx.trace(ctx.field_mul(y1, y2)) + ctx.trace(y1) + ctx.trace(y2) + 1) % 2;
            if shifted != expanded {
                return Some(format!("Tr((y1+1)(y2+1)) != expansion at ({y1:?}, {y2:?})"));
            }
            let exactly_one = (ctx.trace(ctx.field_mul(y1, y2)) == 0) != (shifted == 0);
            (ctx.trace(y1) == ctx.trace(y2) && !exactly_one)
                .then(|| format!("equal traces but not exactly one zero at ({y1:?}, {y2:?})"))
        });
    }));

    out.push(CheckRecord::timed("artin_schreier_counts", delta, "every field element", |rec| {
        let (mut solvable, mut solutions) = (0u64, 0u64);
        for a in ctx.field_elements() {
            let roots = ctx.solve_artin_schreier(a);
            if let Some([t0, t1]) = roots {
                solvable += 1;
                solutions += 2;
                for t in [t0, t1] {
                    if ctx.field_square(t) + t != a {
                        rec.fail(format!("root {t:?} of T^2+T = {a:?} does not satisfy it"));
                    }
                }
                if t0 + t1 != FieldElement::ONE {
                    rec.fail(format!("roots for {a:?} do not differ by 1"));
                }
            }
            if roots.is_some() != (ctx.trace(a) == 0) {
                rec.fail(format!("solvability of T^2+T = {a:?} disagrees with its trace"));
            }
        }
        rec.expect_count("solvable", solvable, 1 << (delta - 1));
        rec.expect_count("solutions", solutions, 1 << delta);
    }));
    out
}
