//! Cooperative cancellation for long-running solver calls.
//!
//! The core crate has no clock. Solvers poll a [`Budget`] at regular
//! intervals and give up with a timeout once it reports exhaustion; callers
//! with `std` available plug in a wall-clock deadline.

/// Source of "keep going / stop" decisions for a solver call.
pub trait Budget {
    /// Called once at the start of every independent decision (one value of
    /// `k` in a chromatic-number sweep). Deadline-style budgets rearm here.
    fn start(&mut self) {}

    /// Polled periodically. Returning `true` aborts the current decision.
    fn exhausted(&mut self) -> bool;
}

/// Never runs out.
#[derive(Debug, Clone, Copy, Default)]
pub struct Unlimited;

impl Budget for Unlimited {
    fn exhausted(&mut self) -> bool {
        false
    }
}

/// Allows a fixed number of polls per decision. Deterministic, which makes it
/// the budget of choice in tests.
#[derive(Debug, Clone, Copy)]
pub struct StepBudget {
    limit: u64,
    used: u64,
}

impl StepBudget {
    pub fn new(limit: u64) -> Self {
        StepBudget { limit, used: 0 }
    }
}

impl Budget for StepBudget {
    fn start(&mut self) {
        self.used = 0;
    }

    fn exhausted(&mut self) -> bool {
        self.used += 1;
        self.used > self.limit
    }
}

impl<B: Budget + ?Sized> Budget for &mut B {
    fn start(&mut self) {
        (**self).start()
    }

    fn exhausted(&mut self) -> bool {
        (**self).exhausted()
    }
}
