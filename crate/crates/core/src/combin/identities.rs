//! Randomized exact checks of the identities satisfied by `F_t` and the
//! binomial identities used alongside them.
//!
//! Sampling domains follow the hypotheses under which each identity holds
//! with the truncating binomial convention of [`binom`]:
//!
//! | identity | side conditions |
//! |---|---|
//! | Pascal step in `a` | `a >= 1` |
//! | step in `s` | `t >= 1`, `s >= n + 4` |
//! | closed form at `eps = s-n-3` | `s >= n + 3`, `a >= 0` |
//! | shift at `eps = 0`, `t-1` | `t >= 1`, `s >= n + 3`, `a >= 0` |
//! | shift at `eps = 0`, `t` | `s >= n + 3`, `a >= 0` |
//! | lowering `eps`, `t-1` | `t >= 1`, `eps >= 1` |
//! | lowering `eps`, `t` | `eps >= 1`, `s >= n + 3`, `n >= 1`, `a >= 0` |

use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{binom, f_t};

const T_MAX: u32 = 6;
const A_MAX: i64 = 40;
const N_MAX: i64 = 10;
const S_SPAN: i64 = 12;
const EPS_MAX: i64 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `F_t(a,s,e,n) = F_t(a-1,s,e,n) + F_t(a-1,s-1,e,n-1)`
    PascalInA,
    /// `F_t(a,s-1,e,n) + F_{t-1}(a+1,s,e,n) = F_t(a,s,e,n)`
    StepInS,
    /// `F_t(a,s,s-n-3,n) = binom(a,n) + sum_{i=1..t} binom(s-n-4+i,i) binom(a,n)`
    MaximalExcessClosedForm,
    /// `F_t(a,s,0,n) + F_{t-1}(a,s,0,n-1) = F_t(a+t,s,s-n-3,n)`
    ZeroExcessShift,
    /// `F_t(a,s,0,n) + F_t(a,s,0,n-1) = F_t(a+t+1,s,s-n-3,n)`
    ZeroExcessShiftSameT,
    /// `F_t(a,s,e,n) + F_{t-1}(a,s,e,n-1) = F_t(a,s,e-1,n)`
    LowerExcess,
    /// `F_t(a,s,e,n) + F_t(a,s,e,n-1) = F_t(a+1,s,e-1,n)`
    LowerExcessSameT,
    /// `sum_{l=0..b} binom(a+l,a) = binom(a+b+1,a+1)`
    HockeyStick,
    /// `sum_{i=0..t-1} binom(b+i,i) = binom(b+t,t-1)`
    ChristmasStocking,
    /// `binom(a+b+1,2) = binom(a+1,2) + binom(b+1,2) + ab`
    Triangular,
}

impl Identity {
    pub const ALL: [Identity; 10] = [
        Identity::PascalInA,
        Identity::StepInS,
        Identity::MaximalExcessClosedForm,
        Identity::ZeroExcessShift,
        Identity::ZeroExcessShiftSameT,
        Identity::LowerExcess,
        Identity::LowerExcessSameT,
        Identity::HockeyStick,
        Identity::ChristmasStocking,
        Identity::Triangular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::PascalInA => "pascal-in-a",
            Identity::StepInS => "step-in-s",
            Identity::MaximalExcessClosedForm => "maximal-excess-closed-form",
            Identity::ZeroExcessShift => "zero-excess-shift",
            Identity::ZeroExcessShiftSameT => "zero-excess-shift-same-t",
            Identity::LowerExcess => "lower-excess",
            Identity::LowerExcessSameT => "lower-excess-same-t",
            Identity::HockeyStick => "hockey-stick",
            Identity::ChristmasStocking => "christmas-stocking",
            Identity::Triangular => "triangular",
        }
    }

    /// Draws a parameter tuple satisfying this identity's side conditions.
    pub fn sample<R: Rng>(self, rng: &mut R) -> Params {
        let n = rng.gen_range(0..=N_MAX);
        match self {
            Identity::PascalInA => Params::F {
                t: rng.gen_range(0..=T_MAX),
                a: rng.gen_range(1..=A_MAX),
                s: rng.gen_range(0..=n + S_SPAN),
                eps: rng.gen_range(0..=EPS_MAX),
                n,
            },
            Identity::StepInS => Params::F {
                t: rng.gen_range(1..=T_MAX),
                a: rng.gen_range(-A_MAX..=A_MAX),
                s: rng.gen_range(n + 4..=n + S_SPAN),
                eps: rng.gen_range(0..=EPS_MAX),
                n,
            },
            Identity::MaximalExcessClosedForm | Identity::ZeroExcessShiftSameT => {
                let s = rng.gen_range(n + 3..=n + S_SPAN);
                Params::F {
                    t: rng.gen_range(0..=T_MAX),
                    a: rng.gen_range(0..=A_MAX),
                    s,
                    eps: s - n - 3,
                    n,
                }
            }
            Identity::ZeroExcessShift => {
                let s = rng.gen_range(n + 3..=n + S_SPAN);
                Params::F {
                    t: rng.gen_range(1..=T_MAX),
                    a: rng.gen_range(0..=A_MAX),
                    s,
                    eps: s - n - 3,
                    n,
                }
            }
            Identity::LowerExcess => Params::F {
                t: rng.gen_range(1..=T_MAX),
                a: rng.gen_range(-A_MAX..=A_MAX),
                s: rng.gen_range(0..=n + S_SPAN),
                eps: rng.gen_range(1..=EPS_MAX),
                n,
            },
            Identity::LowerExcessSameT => {
                let n = n.max(1);
                Params::F {
                    t: rng.gen_range(0..=T_MAX),
                    a: rng.gen_range(0..=A_MAX),
                    s: rng.gen_range(n + 3..=n + S_SPAN),
                    eps: rng.gen_range(1..=EPS_MAX),
                    n,
                }
            }
            Identity::HockeyStick | Identity::ChristmasStocking | Identity::Triangular => {
                Params::Pair {
                    a: rng.gen_range(0..=A_MAX),
                    b: rng.gen_range(0..=A_MAX),
                }
            }
        }
    }

    /// Both sides of the identity at `params`.
    pub fn sides(self, params: Params) -> (BigInt, BigInt) {
        match (self, params) {
            (Identity::PascalInA, Params::F { t, a, s, eps, n }) => (
                f_t(t, a, s, eps, n),
                f_t(t, a - 1, s, eps, n) + f_t(t, a - 1, s - 1, eps, n - 1),
            ),
            (Identity::StepInS, Params::F { t, a, s, eps, n }) => (
                f_t(t, a, s - 1, eps, n) + f_t(t - 1, a + 1, s, eps, n),
                f_t(t, a, s, eps, n),
            ),
            (Identity::MaximalExcessClosedForm, Params::F { t, a, s, n, .. }) => {
                let secants: BigInt = (1..=i64::from(t)).map(|i| binom(s - n - 4 + i, i)).sum();
                (
                    f_t(t, a, s, s - n - 3, n),
                    binom(a, n) + secants * binom(a, n),
                )
            }
            (Identity::ZeroExcessShift, Params::F { t, a, s, n, .. }) => (
                f_t(t, a, s, 0, n) + f_t(t - 1, a, s, 0, n - 1),
                f_t(t, a + i64::from(t), s, s - n - 3, n),
            ),
            (Identity::ZeroExcessShiftSameT, Params::F { t, a, s, n, .. }) => (
                f_t(t, a, s, 0, n) + f_t(t, a, s, 0, n - 1),
                f_t(t, a + i64::from(t) + 1, s, s - n - 3, n),
            ),
            (Identity::LowerExcess, Params::F { t, a, s, eps, n }) => (
                f_t(t, a, s, eps, n) + f_t(t - 1, a, s, eps, n - 1),
                f_t(t, a, s, eps - 1, n),
            ),
            (Identity::LowerExcessSameT, Params::F { t, a, s, eps, n }) => (
                f_t(t, a, s, eps, n) + f_t(t, a, s, eps, n - 1),
                f_t(t, a + 1, s, eps - 1, n),
            ),
            (Identity::HockeyStick, Params::Pair { a, b }) => (
                (0..=b).map(|l| binom(a + l, a)).sum(),
                binom(a + b + 1, a + 1),
            ),
            (Identity::ChristmasStocking, Params::Pair { a: t, b }) => {
                ((0..t).map(|i| binom(b + i, i)).sum(), binom(b + t, t - 1))
            }
            (Identity::Triangular, Params::Pair { a, b }) => (
                binom(a + b + 1, 2),
                binom(a + 1, 2) + binom(b + 1, 2) + BigInt::from(a) * b,
            ),
            (identity, params) => panic!("{params} is not a parameter tuple for {identity}"),
        }
    }

    pub fn holds(self, params: Params) -> bool {
        let (lhs, rhs) = self.sides(params);
        lhs == rhs
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Params {
    F {
        t: u32,
        a: i64,
        s: i64,
        eps: i64,
        n: i64,
    },
    Pair {
        a: i64,
        b: i64,
    },
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Params::F { t, a, s, eps, n } => write!(f, "(t={t}, a={a}, s={s}, eps={eps}, n={n})"),
            Params::Pair { a, b } => write!(f, "(a={a}, b={b})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct IdentityOutcome {
    pub identity: Identity,
    pub trials: usize,
    pub failures: Vec<Params>,
}

impl IdentityOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub seed: u64,
    pub outcomes: Vec<IdentityOutcome>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(IdentityOutcome::passed)
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            let verdict = if o.passed() { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{verdict} {:<28} {}/{} exact",
                o.identity.name(),
                o.trials - o.failures.len(),
                o.trials
            )?;
            for p in o.failures.iter().take(5) {
                writeln!(f, "    failed at {p}")?;
            }
        }
        Ok(())
    }
}

/// Checks every identity on `trials` random tuples drawn from `seed`.
pub fn identity_suite(seed: u64, trials: usize) -> IdentityReport {
    assert!(trials >= 1, "identity_suite needs at least one trial");
    let outcomes = Identity::ALL
        .par_iter()
        .enumerate()
        .map(|(k, &identity)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let failures = (0..trials)
                .map(|_| identity.sample(&mut rng))
                .filter(|&p| !identity.holds(p))
                .collect();
            IdentityOutcome {
                identity,
                trials,
                failures,
            }
        })
        .collect();
    IdentityReport { seed, outcomes }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_excess_instance() {
        let p = Params::F {
            t: 1,
            a: 5,
            s: 10,
            eps: 1,
            n: 5,
        };
        assert_eq!(
            Identity::LowerExcess.sides(p),
            (BigInt::from(13), BigInt::from(13))
        );
    }

    #[test]
    fn closed_form_vanishes_below_range() {
        // a < n - t: both sides are zero.
        let p = Params::F {
            t: 1,
            a: 2,
            s: 12,
            eps: 5,
            n: 4,
        };
        assert_eq!(
            Identity::MaximalExcessClosedForm.sides(p),
            (BigInt::from(0), BigInt::from(0))
        );
        let p = Params::F {
            t: 1,
            a: 4,
            s: 12,
            eps: 5,
            n: 4,
        };
        assert!(Identity::MaximalExcessClosedForm.holds(p));
    }

    #[test]
    fn hockey_stick_instance() {
        assert_eq!(
            Identity::HockeyStick.sides(Params::Pair { a: 3, b: 4 }),
            (BigInt::from(70), BigInt::from(70))
        );
    }

    #[test]
    fn truncating_convention_breaks_pascal_step_at_zero() {
        // Outside the sampled domain the identity is not expected to hold:
        // binom(-1, 0) = 0 under the truncating convention.
        let p = Params::F {
            t: 1,
            a: 0,
            s: 4,
            eps: 1,
            n: 1,
        };
        assert!(!Identity::PascalInA.holds(p));
    }

    #[test]
    fn small_suite_passes() {
        let report = identity_suite(7, 50);
        assert!(report.all_passed(), "{report}");
        assert_eq!(report.outcomes.len(), 10);
    }

    #[test]
    fn samples_respect_side_conditions() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            if let Params::F { t, s, eps, n, a } = Identity::LowerExcessSameT.sample(&mut rng) {
                assert!(eps >= 1 && s >= n + 3 && n >= 1 && a >= 0 && t <= T_MAX);
            }
            if let Params::F { eps, s, n, .. } = Identity::ZeroExcessShift.sample(&mut rng) {
                assert_eq!(eps, s - n - 3);
            }
        }
    }
}
