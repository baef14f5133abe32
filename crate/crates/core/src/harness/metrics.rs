//! Trial outcome rules and the contact deviation metric.

use serde::{Deserialize, Serialize};

use super::config::ContactLossRule;
use crate::error::{Error, Result};

/// Time-averaged `|l|` over `[t_s, t_e]`, trapezoidal in time.
///
/// `samples` are `(time, l)` pairs in increasing time order.
pub fn deviation_metric(samples: &[(f64, f64)]) -> Result<f64> {
    let (Some(first), Some(last)) = (samples.first(), samples.last()) else {
        return Err(Error::EmptyTrace);
    };
    let span = last.0 - first.0;
    if span.is_nan() || span <= 0.0 {
        return Err(Error::EmptyTrace);
    }
    let integral: f64 = samples
        .windows(2)
        .map(|w| 0.5 * (w[0].1.abs() + w[1].1.abs()) * (w[1].0 - w[0].0))
        .sum();
    Ok(integral / span)
}

/// Like [`deviation_metric`], but only integrates over intervals where both
/// ends have contact (`None` marks a sample without contact).
///
/// Returns `None` if contact never spans an interval.
pub fn deviation_over_contact(samples: &[(f64, Option<f64>)]) -> Option<f64> {
    let mut integral = 0.0;
    let mut span = 0.0;
    for w in samples.windows(2) {
        if let ((t0, Some(l0)), (t1, Some(l1))) = (w[0], w[1]) {
            integral += 0.5 * (l0.abs() + l1.abs()) * (t1 - t0);
            span += t1 - t0;
        }
    }
    (span > 0.0).then(|| integral / span)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    Timeout,
    ContactLossFail,
    NumericalAbort,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Success => "success",
            Outcome::Timeout => "timeout",
            Outcome::ContactLossFail => "contact_loss_fail",
            Outcome::NumericalAbort => "numerical_abort",
        }
    }
}

/// Applies the success, timeout and contact-loss rules to a stream of samples.
#[derive(Debug, Clone)]
pub struct TrialMonitor {
    d_success: f64,
    timeout: f64,
    loss_limit: f64,
    rule: ContactLossRule,
    loss_started: Option<f64>,
    cumulative_loss: f64,
    longest_loss: f64,
    last_time: Option<f64>,
    min_distance: f64,
}

impl TrialMonitor {
    /// The trial starts without contact; the loss clock runs from `t = 0`.
    pub fn new(d_success: f64, timeout: f64, loss_limit: f64, rule: ContactLossRule) -> Self {
        Self {
            d_success,
            timeout,
            loss_limit,
            rule,
            loss_started: Some(0.0),
            cumulative_loss: 0.0,
            longest_loss: 0.0,
            last_time: None,
            min_distance: f64::INFINITY,
        }
    }

    /// Feeds one sample. `distance` is the contact-to-target distance, given
    /// only while contact is present.
    pub fn observe(&mut self, time: f64, distance: Option<f64>) -> Option<Outcome> {
        let dt = self.last_time.map_or(0.0, |t| time - t);
        self.last_time = Some(time);

        match distance {
            Some(d) => {
                if let Some(start) = self.loss_started.take() {
                    self.longest_loss = self.longest_loss.max(time - start);
                }
                self.min_distance = self.min_distance.min(d);
                if d < self.d_success {
                    return Some(Outcome::Success);
                }
            }
            None => {
                let start = *self.loss_started.get_or_insert(time);
                self.cumulative_loss += dt;
                self.longest_loss = self.longest_loss.max(time - start);
                let lost = match self.rule {
                    ContactLossRule::Continuous => time - start,
                    ContactLossRule::Cumulative => self.cumulative_loss,
                };
                if lost > self.loss_limit {
                    return Some(Outcome::ContactLossFail);
                }
            }
        }
        if time > self.timeout {
            return Some(Outcome::Timeout);
        }
        None
    }

    pub fn min_distance(&self) -> f64 {
        self.min_distance
    }

    pub fn longest_loss(&self) -> f64 {
        self.longest_loss
    }
}
