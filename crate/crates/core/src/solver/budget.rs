use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

/// Search limits. Running out is reported as a distinct outcome, never as
/// a "no".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub const fn unlimited() -> Budget {
        Budget {
            max_nodes: None,
            max_time: None,
        }
    }

    pub const fn nodes(n: u64) -> Budget {
        Budget {
            max_nodes: Some(n),
            max_time: None,
        }
    }

    pub fn seconds(secs: f64) -> Budget {
        Budget {
            max_nodes: None,
            max_time: Some(Duration::from_secs_f64(secs)),
        }
    }

    pub fn with_time(mut self, t: Duration) -> Budget {
        self.max_time = Some(t);
        self
    }
}

impl Default for Budget {
    /// 200M search nodes or 120 seconds, whichever comes first.
    fn default() -> Self {
        Budget {
            max_nodes: Some(200_000_000),
            max_time: Some(Duration::from_secs(120)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Stop {
    Exhausted,
    Cancelled,
}

/// Shared node counter and deadline. Clones share the counter, so a meter
/// handed to several workers (or several consecutive solves) enforces one
/// combined budget.
#[derive(Debug, Clone)]
pub(crate) struct Meter {
    counter: Arc<AtomicU64>,
    cap: Option<u64>,
    start: Instant,
    deadline: Option<Instant>,
    // (lowest successful task, own task index)
    cancel: Option<(Arc<AtomicUsize>, usize)>,
}

impl Meter {
    pub fn new(budget: &Budget) -> Meter {
        let start = Instant::now();
        Meter {
            counter: Arc::new(AtomicU64::new(0)),
            cap: budget.max_nodes,
            start,
            deadline: budget.max_time.map(|t| start + t),
            cancel: None,
        }
    }

    pub fn for_task(&self, best: Arc<AtomicUsize>, task: usize) -> Meter {
        Meter {
            cancel: Some((best, task)),
            ..self.clone()
        }
    }

    #[inline]
    pub fn tick(&self) -> Result<(), Stop> {
        let c = self.counter.fetch_add(1, Ordering::Relaxed) + 1;
        if self.cap.is_some_and(|cap| c > cap) {
            return Err(Stop::Exhausted);
        }
        if c % 256 == 0 {
            if self.deadline.is_some_and(|d| Instant::now() >= d) {
                return Err(Stop::Exhausted);
            }
            if let Some((best, me)) = &self.cancel {
                if best.load(Ordering::Relaxed) < *me {
                    return Err(Stop::Cancelled);
                }
            }
        }
        Ok(())
    }

    pub fn nodes(&self) -> u64 {
        self.counter.load(Ordering::Relaxed)
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_cap_trips() {
        let m = Meter::new(&Budget::nodes(3));
        assert!(m.tick().is_ok());
        assert!(m.tick().is_ok());
        assert!(m.tick().is_ok());
        assert_eq!(m.tick(), Err(Stop::Exhausted));
    }

    #[test]
    fn clones_share_the_counter() {
        let a = Meter::new(&Budget::nodes(2));
        let b = a.clone();
        a.tick().unwrap();
        b.tick().unwrap();
        assert_eq!(a.tick(), Err(Stop::Exhausted));
    }

    #[test]
    fn zero_time_expires() {
        let m = Meter::new(&Budget::unlimited().with_time(Duration::ZERO));
        let stopped = (0..1000).any(|_| m.tick().is_err());
        assert!(stopped);
    }
}
