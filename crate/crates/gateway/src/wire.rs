use serde::{Deserialize, Serialize};

use crate::{GenerationParams, Message, Usage};

#[derive(Serialize)]
struct Request<'a> {
    model: &'a str,
    messages: &'a [Message],
    temperature: f64,
    max_tokens: u32,
}

/// JSON body of a chat-completions request.
pub fn encode_request(messages: &[Message], params: &GenerationParams) -> String {
    serde_json::to_string(&Request {
        model: &params.model,
        messages,
        temperature: params.temperature,
        max_tokens: params.max_tokens,
    })
    .expect("requests serialize")
}

/// The parts of a chat-completions response the harness uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub text: String,
    pub finish_reason: Option<String>,
    pub usage: Usage,
}

impl Completion {
    pub fn truncated(&self) -> bool {
        self.finish_reason.as_deref() == Some("length")
    }
}

#[derive(Deserialize)]
struct Response {
    choices: Vec<Choice>,
    #[serde(default)]
    usage: Option<WireUsage>,
}

#[derive(Deserialize)]
struct Choice {
    message: ChoiceMessage,
    #[serde(default)]
    finish_reason: Option<String>,
}

#[derive(Deserialize)]
struct ChoiceMessage {
    #[serde(default)]
    content: Option<String>,
}

#[derive(Deserialize, Default)]
struct WireUsage {
    #[serde(default)]
    prompt_tokens: u64,
    #[serde(default)]
    completion_tokens: u64,
    #[serde(default)]
    total_tokens: u64,
}

/// Decodes the first choice of a chat-completions response body.
pub fn decode_completion(body: &str) -> Result<Completion, String> {
    let resp: Response = serde_json::from_str(body).map_err(|e| format!("malformed response body: {e}"))?;
    let choice = resp.choices.into_iter().next().ok_or("response has no choices")?;
    let usage = resp.usage.unwrap_or_default();
    Ok(Completion {
        text: choice.message.content.unwrap_or_default(),
        finish_reason: choice.finish_reason,
        usage: Usage {
            prompt_tokens: usage.prompt_tokens,
            completion_tokens: usage.completion_tokens,
            total_tokens: usage.total_tokens,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn request_shape() {
        let body = encode_request(&[Message::user("hi")], &GenerationParams::new("m"));
        assert_eq!(body, r#"{"model":"m","messages":[{"role":"user","content":"hi"}],"temperature":0.0,"max_tokens":2048}"#);
    }

    #[test]
    fn decodes_first_choice() {
        let body = r#"{"choices":[{"message":{"role":"assistant","content":"ok"},"finish_reason":"length"}],
                      "usage":{"prompt_tokens":3,"completion_tokens":1,"total_tokens":4}}"#;
        let c = decode_completion(body).unwrap();
        assert_eq!(c.text, "ok");
        assert!(c.truncated());
        assert_eq!(c.usage.total_tokens, 4);
    }

    #[test]
    fn rejects_empty_choices() {
        assert!(decode_completion(r#"{"choices":[]}"#).is_err());
        assert!(decode_completion("not json").is_err());
    }
}
