use std::cell::Cell;
use std::time::{Duration, Instant};

/// Limits on an exhaustive search. Step limits are deterministic; deadlines
/// are not, so reproducible pipelines should prefer steps.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub max_steps: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_steps: None,
        max_time: None,
    };

    pub fn steps(n: u64) -> Self {
        Budget {
            max_steps: Some(n),
            max_time: None,
        }
    }

    pub fn millis(ms: u64) -> Self {
        Budget {
            max_steps: None,
            max_time: Some(Duration::from_millis(ms)),
        }
    }

    pub fn meter(&self) -> Meter {
        Meter {
            max_steps: self.max_steps,
            deadline: self.max_time.map(|d| Instant::now() + d),
            steps: Cell::new(0),
            exhausted: Cell::new(false),
        }
    }
}

/// Running counter for a [`Budget`]. Counting goes through a shared
/// reference so nested searches can tick the same meter.
#[derive(Debug)]
pub struct Meter {
    max_steps: Option<u64>,
    deadline: Option<Instant>,
    steps: Cell<u64>,
    exhausted: Cell<bool>,
}

impl Meter {
    pub fn unlimited() -> Self {
        Budget::UNLIMITED.meter()
    }

    /// Counts one step; returns `false` once the budget is spent.
    #[inline]
    pub fn tick(&self) -> bool {
        if self.exhausted.get() {
            return false;
        }
        let steps = self.steps.get() + 1;
        self.steps.set(steps);
        if self.max_steps.is_some_and(|m| steps > m) {
            self.exhausted.set(true);
            return false;
        }
        if steps & 0x3ff == 0 && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.exhausted.set(true);
            return false;
        }
        true
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted.get()
    }

    pub fn steps(&self) -> u64 {
        self.steps.get()
    }
}

/// Outcome of a budgeted search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// The search completed without finding anything.
    Absent,
    /// The budget ran out first; nothing can be concluded.
    Unknown,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, Search::Absent)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Search<U> {
        match self {
            Search::Found(t) => Search::Found(f(t)),
            Search::Absent => Search::Absent,
            Search::Unknown => Search::Unknown,
        }
    }
}
