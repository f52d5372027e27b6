use std::time::{Duration, Instant};

use updown_core::generate::Budget;

/// A wall-clock [`Budget`].
#[derive(Debug, Clone, Copy)]
pub struct Deadline {
    at: Option<Instant>,
}

impl Deadline {
    pub fn after(limit: Duration) -> Self {
        Deadline {
            at: Instant::now().checked_add(limit),
        }
    }

    pub fn from_millis(ms: Option<u64>) -> Self {
        match ms {
            Some(ms) => Deadline::after(Duration::from_millis(ms)),
            None => Deadline { at: None },
        }
    }
}

impl Budget for Deadline {
    fn exhausted(&mut self) -> bool {
        self.at.is_some_and(|at| Instant::now() >= at)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_budget_is_spent_at_once() {
        assert!(Deadline::after(Duration::ZERO).exhausted());
        assert!(!Deadline::from_millis(None).exhausted());
        assert!(!Deadline::from_millis(Some(60_000)).exhausted());
    }
}
