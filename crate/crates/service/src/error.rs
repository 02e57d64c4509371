use adviser_core::{Error, ValidationReport};
use axum::extract::rejection::JsonRejection;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde_json::{json, Value};

#[derive(Debug)]
pub struct ApiError {
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
    pub detail: Value,
}

impl ApiError {
    pub fn session_not_found(id: &str) -> Self {
        ApiError {
            status: StatusCode::NOT_FOUND,
            code: "session_not_found",
            message: format!("no session `{id}`"),
            detail: Value::Null,
        }
    }

    pub fn bad_request(message: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            code: "bad_request",
            message: message.into(),
            detail: Value::Null,
        }
    }

    pub fn unprocessable(code: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::UNPROCESSABLE_ENTITY,
            code,
            message: message.into(),
            detail: Value::Null,
        }
    }

    pub fn invalid_arena(report: &ValidationReport) -> Self {
        let violations: Vec<Value> = report
            .violations
            .iter()
            .map(|v| json!({ "rule": v.rule.name(), "message": v.message }))
            .collect();
        ApiError {
            detail: json!({ "violations": violations }),
            ..Self::unprocessable("invalid_arena", "arena violates the model's rules")
        }
    }

    pub fn internal(message: String) -> Self {
        ApiError {
            status: StatusCode::INTERNAL_SERVER_ERROR,
            code: "internal",
            message,
            detail: Value::Null,
        }
    }
}

impl From<Error> for ApiError {
    fn from(err: Error) -> Self {
        let status = match err {
            Error::Halted(_) | Error::WrongTurn { .. } | Error::NoFeasibleAdviser { .. } => {
                StatusCode::CONFLICT
            }
            Error::UnknownFixture(_) => StatusCode::NOT_FOUND,
            _ => StatusCode::UNPROCESSABLE_ENTITY,
        };
        let detail = match &err {
            Error::InputNotEnabled {
                state,
                input,
                enabled,
            } => {
                json!({ "state": state, "input": input, "enabled": enabled })
            }
            Error::Syntax { line, column, .. } => json!({ "line": line, "column": column }),
            Error::WrongTurn { state, expected } => json!({ "state": state, "expected": expected }),
            Error::Halted(reason) => json!({ "reason": reason }),
            _ => Value::Null,
        };
        ApiError {
            status,
            code: err.code(),
            message: err.to_string(),
            detail,
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(rejection: JsonRejection) -> Self {
        ApiError {
            status: rejection.status(),
            ..Self::bad_request(rejection.body_text())
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "code": self.code, "message": self.message, "detail": self.detail });
        (self.status, Json(body)).into_response()
    }
}
