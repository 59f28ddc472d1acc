//! Chat-completion client with deterministic parameters, a persistent
//! content-addressed response cache and an offline replay mode.
//!
//! The endpoint base URL and API key are read from `LLM_API_BASE` and
//! `LLM_API_KEY`. Requests go to `{base}/chat/completions`.

mod cache;
mod gateway;
mod limiter;
mod transport;
mod wire;

pub use cache::{CacheEntry, CacheKey, ResponseCache};
pub use gateway::{Gateway, GatewayConfig, GatewayError, Mode, ENV_API_BASE, ENV_API_KEY};
pub use limiter::{InFlight, InFlightGuard, RateLimiter};
pub use transport::{HttpReply, Transport, TransportError, UreqTransport};
pub use wire::{decode_completion, encode_request, Completion};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_MAX_TOKENS: u32 = 2048;
/// Output budget for models that emit long reasoning traces.
pub const REASONING_MAX_TOKENS: u32 = 20480;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    System,
    User,
    Assistant,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Message {
    pub role: Role,
    pub content: String,
}

impl Message {
    pub fn system(content: impl Into<String>) -> Self {
        Self { role: Role::System, content: content.into() }
    }

    pub fn user(content: impl Into<String>) -> Self {
        Self { role: Role::User, content: content.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ParamsError {
    #[error("temperature {0} is outside [0, 2]")]
    Temperature(f64),
    #[error("max_tokens must be positive")]
    MaxTokens,
    #[error("model id is empty")]
    Model,
}

/// Sampling parameters sent with every request.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerationParams {
    pub model: String,
    pub temperature: f64,
    pub max_tokens: u32,
}

impl GenerationParams {
    /// Greedy decoding with the default output budget.
    pub fn new(model: impl Into<String>) -> Self {
        Self { model: model.into(), temperature: 0.0, max_tokens: DEFAULT_MAX_TOKENS }
    }

    pub fn with_max_tokens(mut self, max_tokens: u32) -> Self {
        self.max_tokens = max_tokens;
        self
    }

    pub fn with_temperature(mut self, temperature: f64) -> Self {
        self.temperature = temperature;
        self
    }

    pub fn validate(&self) -> Result<(), ParamsError> {
        if self.model.is_empty() {
            return Err(ParamsError::Model);
        }
        if !(0.0..=2.0).contains(&self.temperature) {
            return Err(ParamsError::Temperature(self.temperature));
        }
        if self.max_tokens == 0 {
            return Err(ParamsError::MaxTokens);
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Usage {
    pub prompt_tokens: u64,
    pub completion_tokens: u64,
    pub total_tokens: u64,
}

/// Where a response came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Live,
    Cache,
    Replay,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LlmResponse {
    pub text: String,
    /// The endpoint stopped because it hit `max_tokens`.
    pub truncated: bool,
    pub usage: Usage,
    pub provenance: Provenance,
    pub key: CacheKey,
    /// Latency of the original live call, also for cached responses.
    pub latency_ms: u64,
}
