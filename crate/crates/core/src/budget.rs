use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Caps on exhaustive searches. Exceeding either cap is reported as
/// [`Error::BudgetExhausted`], never as a negative answer.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget::from_env()
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_nodes: None, deadline: None }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes: Some(max_nodes), deadline: None }
    }

    pub fn millis(ms: u64) -> Self {
        Budget { max_nodes: None, deadline: Some(Instant::now() + Duration::from_millis(ms)) }
    }

    /// Reads `TWW_BUDGET_MS`; unlimited when unset or unparsable.
    pub fn from_env() -> Self {
        match std::env::var("TWW_BUDGET_MS").ok().and_then(|v| v.trim().parse::<u64>().ok()) {
            Some(ms) => Budget::millis(ms),
            None => Budget::unlimited(),
        }
    }

    pub fn is_unlimited(&self) -> bool {
        self.max_nodes.is_none() && self.deadline.is_none()
    }

    pub fn with_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = Some(max_nodes);
        self
    }

    pub fn meter(&self) -> Meter {
        Meter { budget: *self, nodes: 0 }
    }
}

#[derive(Debug)]
pub struct Meter {
    budget: Budget,
    nodes: u64,
}

impl Meter {
    /// Counts one search node; errors once a cap is passed.
    pub fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if let Some(max) = self.budget.max_nodes {
            if self.nodes > max {
                return Err(Error::BudgetExhausted);
            }
        }
        if self.nodes & 0x3ff == 0 {
            if let Some(deadline) = self.budget.deadline {
                if Instant::now() >= deadline {
                    return Err(Error::BudgetExhausted);
                }
            }
        }
        Ok(())
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }
}
