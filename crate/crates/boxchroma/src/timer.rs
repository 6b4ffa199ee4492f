//! Wall-clock budget for solver calls.

use boxchroma_core::Budget;
use std::time::{Duration, Instant};

/// Environment variable holding the default time limit in seconds.
pub const TIME_LIMIT_ENV: &str = "BOXCHROMA_TIME_LIMIT";

pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(60);

/// A deadline rearmed at the start of every decision. `None` never expires.
#[derive(Debug, Clone, Copy)]
pub struct TimeBudget {
    limit: Option<Duration>,
    deadline: Option<Instant>,
}

impl TimeBudget {
    pub fn new(limit: Option<Duration>) -> Self {
        TimeBudget { limit, deadline: limit.map(|l| Instant::now() + l) }
    }

    pub fn seconds(secs: f64) -> Self {
        TimeBudget::new((secs > 0.0).then(|| Duration::from_secs_f64(secs)))
    }

    pub fn limit(&self) -> Option<Duration> {
        self.limit
    }
}

impl Budget for TimeBudget {
    fn start(&mut self) {
        self.deadline = self.limit.map(|l| Instant::now() + l);
    }

    fn exhausted(&mut self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}
