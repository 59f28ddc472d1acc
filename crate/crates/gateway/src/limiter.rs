use std::sync::{Condvar, Mutex};
use std::thread;
use std::time::{Duration, Instant};

/// Token bucket refilled at `rpm` tokens per minute, holding at most `burst`.
#[derive(Debug)]
pub struct RateLimiter {
    per_token: Duration,
    burst: f64,
    state: Mutex<(f64, Instant)>,
}

impl RateLimiter {
    /// # Panics
    /// If `rpm` or `burst` is zero.
    pub fn new(rpm: u32, burst: u32) -> Self {
        assert!(rpm > 0 && burst > 0, "rate limits must be positive");
        Self {
            per_token: Duration::from_secs_f64(60.0 / f64::from(rpm)),
            burst: f64::from(burst),
            state: Mutex::new((f64::from(burst), Instant::now())),
        }
    }

    /// Blocks until a token is available and takes it.
    pub fn acquire(&self) {
        loop {
            let wait = {
                let mut s = self.state.lock().unwrap_or_else(|p| p.into_inner());
                let now = Instant::now();
                let refill = now.duration_since(s.1).as_secs_f64() / self.per_token.as_secs_f64();
                s.0 = (s.0 + refill).min(self.burst);
                s.1 = now;
                if s.0 >= 1.0 {
                    s.0 -= 1.0;
                    return;
                }
                self.per_token.mul_f64(1.0 - s.0)
            };
            thread::sleep(wait);
        }
    }
}

/// Counting semaphore bounding concurrent live requests.
#[derive(Debug)]
pub struct InFlight {
    max: usize,
    current: Mutex<usize>,
    freed: Condvar,
}

/// Releases its slot on drop.
pub struct InFlightGuard<'a>(&'a InFlight);

impl InFlight {
    /// # Panics
    /// If `max` is zero.
    pub fn new(max: usize) -> Self {
        assert!(max > 0, "in-flight limit must be positive");
        Self { max, current: Mutex::new(0), freed: Condvar::new() }
    }

    pub fn enter(&self) -> InFlightGuard<'_> {
        let mut n = self.current.lock().unwrap_or_else(|p| p.into_inner());
        while *n >= self.max {
            n = self.freed.wait(n).unwrap_or_else(|p| p.into_inner());
        }
        *n += 1;
        InFlightGuard(self)
    }

    pub fn current(&self) -> usize {
        *self.current.lock().unwrap_or_else(|p| p.into_inner())
    }
}

impl Drop for InFlightGuard<'_> {
    fn drop(&mut self) {
        let mut n = self.0.current.lock().unwrap_or_else(|p| p.into_inner());
        *n -= 1;
        self.0.freed.notify_one();
    }
}
