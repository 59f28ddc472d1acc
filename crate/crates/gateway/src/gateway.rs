use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::thread;
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cache::{CacheEntry, CacheKey, ResponseCache};
use crate::limiter::{InFlight, RateLimiter};
use crate::transport::{Transport, TransportError, UreqTransport};
use crate::wire::{decode_completion, encode_request};
use crate::{GenerationParams, LlmResponse, Message, ParamsError, Provenance};

pub const ENV_API_BASE: &str = "LLM_API_BASE";
pub const ENV_API_KEY: &str = "LLM_API_KEY";

/// Where responses come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Always call the endpoint; store responses if a cache is configured.
    Live,
    /// Serve from the cache, calling the endpoint only on a miss.
    CacheThrough,
    /// Serve from the cache only; a miss is an error.
    Replay,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Live => "live",
            Mode::CacheThrough => "cache-through",
            Mode::Replay => "replay",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "live" => Ok(Mode::Live),
            "cache-through" => Ok(Mode::CacheThrough),
            "replay" => Ok(Mode::Replay),
            _ => Err(format!("unknown gateway mode `{s}` (expected live, cache-through or replay)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GatewayConfig {
    pub mode: Mode,
    pub cache_dir: Option<PathBuf>,
    pub api_base: Option<String>,
    pub api_key: Option<String>,
    pub rpm: u32,
    pub max_in_flight: usize,
    pub max_attempts: u32,
    pub timeout: Duration,
    /// Delay before the first retry; doubled on each further retry.
    pub backoff: Duration,
}

impl Default for GatewayConfig {
    fn default() -> Self {
        Self {
            mode: Mode::CacheThrough,
            cache_dir: None,
            api_base: None,
            api_key: None,
            rpm: 30,
            max_in_flight: 4,
            max_attempts: 4,
            timeout: Duration::from_secs(120),
            backoff: Duration::from_secs(1),
        }
    }
}

impl GatewayConfig {
    pub fn replay(cache_dir: impl Into<PathBuf>) -> Self {
        Self { mode: Mode::Replay, cache_dir: Some(cache_dir.into()), ..Self::default() }
    }

    /// Fills the endpoint and key from the environment where unset.
    pub fn with_env(mut self) -> Self {
        if self.api_base.is_none() {
            self.api_base = std::env::var(ENV_API_BASE).ok().filter(|s| !s.is_empty());
        }
        if self.api_key.is_none() {
            self.api_key = std::env::var(ENV_API_KEY).ok().filter(|s| !s.is_empty());
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum GatewayError {
    #[error("no cached response for key {key}")]
    CacheMiss { key: CacheKey },
    #[error("endpoint returned status {status}: {body}")]
    EndpointError { status: u16, body: String },
    #[error("endpoint timed out")]
    Timeout,
    #[error(transparent)]
    InvalidParams(#[from] ParamsError),
    #[error("no endpoint configured (set {ENV_API_BASE})")]
    MissingEndpoint,
    #[error("mode {0} requires a cache directory")]
    MissingCache(Mode),
    #[error("cache I/O failed: {0}")]
    Cache(String),
    #[error("{0}")]
    Decode(String),
}

/// Shareable chat-completion client.
pub struct Gateway {
    config: GatewayConfig,
    cache: Option<ResponseCache>,
    transport: Box<dyn Transport>,
    limiter: RateLimiter,
    in_flight: InFlight,
}

impl fmt::Debug for Gateway {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gateway").field("config", &self.config).finish_non_exhaustive()
    }
}

impl Gateway {
    pub fn new(config: GatewayConfig) -> Result<Self, GatewayError> {
        Self::with_transport(config, Box::new(UreqTransport))
    }

    pub fn with_transport(config: GatewayConfig, transport: Box<dyn Transport>) -> Result<Self, GatewayError> {
        if config.mode == Mode::Replay && config.cache_dir.is_none() {
            return Err(GatewayError::MissingCache(config.mode));
        }
        if config.mode == Mode::CacheThrough && config.cache_dir.is_none() {
            return Err(GatewayError::MissingCache(config.mode));
        }
        let burst = u32::try_from(config.max_in_flight.max(1)).unwrap_or(u32::MAX);
        Ok(Self {
            cache: config.cache_dir.clone().map(ResponseCache::new),
            limiter: RateLimiter::new(config.rpm.max(1), burst),
            in_flight: InFlight::new(config.max_in_flight.max(1)),
            transport,
            config,
        })
    }

    pub fn config(&self) -> &GatewayConfig {
        &self.config
    }

    pub fn complete(&self, messages: &[Message], params: &GenerationParams) -> Result<LlmResponse, GatewayError> {
        params.validate()?;
        let key = CacheKey::derive(messages, params);
        match self.config.mode {
            Mode::Replay => {
                let entry = self.lookup(&key)?.ok_or(GatewayError::CacheMiss { key })?;
                respond(&entry, Provenance::Replay)
            }
            Mode::CacheThrough => match self.lookup(&key)? {
                Some(entry) => respond(&entry, Provenance::Cache),
                None => self.live(messages, params, key),
            },
            Mode::Live => self.live(messages, params, key),
        }
    }

    fn lookup(&self, key: &CacheKey) -> Result<Option<CacheEntry>, GatewayError> {
        let cache = self.cache.as_ref().ok_or(GatewayError::MissingCache(self.config.mode))?;
        cache.get(key).map_err(|e| GatewayError::Cache(e.to_string()))
    }

    fn live(&self, messages: &[Message], params: &GenerationParams, key: CacheKey) -> Result<LlmResponse, GatewayError> {
        let base = self.config.api_base.as_deref().ok_or(GatewayError::MissingEndpoint)?;
        let url = format!("{}/chat/completions", base.trim_end_matches('/'));
        let body = encode_request(messages, params);
        let attempts = self.config.max_attempts.max(1);
        let mut last = GatewayError::Timeout;
        for attempt in 0..attempts {
            if attempt > 0 {
                thread::sleep(self.config.backoff.saturating_mul(1 << (attempt - 1).min(16)));
            }
            self.limiter.acquire();
            let _slot = self.in_flight.enter();
            let start = Instant::now();
            let result = self.transport.post_json(&url, self.config.api_key.as_deref(), &body, self.config.timeout);
            let latency_ms = u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX);
            match result {
                Ok(reply) if (200..300).contains(&reply.status) => {
                    let entry = CacheEntry { key, created_at: unix_now(), params: params.clone(), latency_ms, body: reply.body };
                    let response = respond(&entry, Provenance::Live)?;
                    if let Some(cache) = &self.cache {
                        cache.put(&entry).map_err(|e| GatewayError::Cache(e.to_string()))?;
                    }
                    return Ok(response);
                }
                Ok(reply) if reply.status == 429 || reply.status >= 500 => {
                    last = GatewayError::EndpointError { status: reply.status, body: reply.body };
                }
                Ok(reply) => return Err(GatewayError::EndpointError { status: reply.status, body: reply.body }),
                Err(TransportError::Timeout) => last = GatewayError::Timeout,
                Err(TransportError::Io(msg)) => last = GatewayError::EndpointError { status: 0, body: msg },
            }
        }
        Err(last)
    }
}

fn respond(entry: &CacheEntry, provenance: Provenance) -> Result<LlmResponse, GatewayError> {
    let c = decode_completion(&entry.body).map_err(GatewayError::Decode)?;
    Ok(LlmResponse {
        truncated: c.truncated(),
        text: c.text,
        usage: c.usage,
        provenance,
        key: entry.key.clone(),
        latency_ms: entry.latency_ms,
    })
}

fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}
