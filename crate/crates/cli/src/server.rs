//! JSON-over-HTTP service.
//!
//! Handlers are stateless: each request becomes an [`Operation`] run through
//! [`execute`] on the blocking pool. Searches carry a cancellation flag that
//! is raised when the handler future is dropped (client gone).

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{DefaultBodyLimit, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::{json, Value};
use tower_http::cors::CorsLayer;

use crate::api::{codes, execute, run_job, ApiError, JobRequest, Operation};
use crate::config::{Config, Limits};

/// Request bodies above this size are rejected before parsing.
pub const MAX_BODY_BYTES: usize = 64 * 1024;

#[derive(Clone)]
struct AppState {
    limits: Arc<Limits>,
}

fn status_for(code: &str) -> StatusCode {
    match code {
        codes::MALFORMED_INPUT => StatusCode::BAD_REQUEST,
        codes::INVALID_PARAMETER => StatusCode::UNPROCESSABLE_ENTITY,
        codes::GUARD_EXCEEDED => StatusCode::PAYLOAD_TOO_LARGE,
        codes::NOT_FOUND => StatusCode::NOT_FOUND,
        // 499-style; the client is usually gone anyway
        codes::CANCELLED => StatusCode::REQUEST_TIMEOUT,
        _ => StatusCode::INTERNAL_SERVER_ERROR,
    }
}

struct Reply(Result<Value, ApiError>);

impl IntoResponse for Reply {
    fn into_response(self) -> Response {
        match self.0 {
            Ok(v) => (StatusCode::OK, Json(v)).into_response(),
            Err(e) => (status_for(&e.code), Json(e)).into_response(),
        }
    }
}

/// Raises the flag when dropped.
struct CancelOnDrop(Arc<AtomicBool>);

impl Drop for CancelOnDrop {
    fn drop(&mut self) {
        self.0.store(true, Ordering::Relaxed);
    }
}

async fn run(state: &AppState, op: Operation) -> Reply {
    let flag = Arc::new(AtomicBool::new(false));
    let guard = CancelOnDrop(flag.clone());
    let limits = state.limits.clone();
    let task = tokio::task::spawn_blocking(move || execute(&op, &limits, Some(flag)));
    let out = match task.await {
        Ok(r) => r.map(|o| o.json),
        Err(e) => Err(ApiError::new(codes::INTERNAL, e.to_string())),
    };
    // finished normally: nothing left to cancel
    std::mem::forget(guard);
    Reply(out)
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> Result<T, Reply> {
    payload.map(|Json(v)| v).map_err(|e| {
        let code = if e.status() == StatusCode::PAYLOAD_TOO_LARGE {
            codes::GUARD_EXCEEDED
        } else {
            codes::MALFORMED_INPUT
        };
        Reply(Err(ApiError::new(code, e.body_text())))
    })
}

#[derive(Deserialize)]
struct PartsBody {
    parts: Vec<String>,
    #[serde(default)]
    alphabet: Option<String>,
}

#[derive(Deserialize)]
struct WordBody {
    word: String,
    #[serde(default)]
    alphabet: Option<String>,
}

#[derive(Deserialize)]
struct InvertBody {
    l: String,
    #[serde(default)]
    alphabet: Option<String>,
}

#[derive(Deserialize)]
struct ApplyBody {
    word: String,
    parts_lengths: Vec<usize>,
    k: usize,
    #[serde(default)]
    alphabet: Option<String>,
}

#[derive(Deserialize)]
struct SearchBody {
    word: String,
    k: usize,
    #[serde(default)]
    limit: Option<Value>,
    #[serde(default)]
    alphabet: Option<String>,
}

#[derive(Deserialize)]
struct FamilyBody {
    k: usize,
    ratio: u64,
}

async fn ebwt_handler(
    State(s): State<AppState>,
    p: Result<Json<PartsBody>, JsonRejection>,
) -> Reply {
    match body(p) {
        Ok(b) => {
            run(
                &s,
                Operation::Ebwt {
                    parts: b.parts,
                    alphabet: b.alphabet,
                },
            )
            .await
        }
        Err(r) => r,
    }
}

async fn bwt_handler(State(s): State<AppState>, p: Result<Json<WordBody>, JsonRejection>) -> Reply {
    match body(p) {
        Ok(b) => {
            run(
                &s,
                Operation::Bwt {
                    word: b.word,
                    alphabet: b.alphabet,
                },
            )
            .await
        }
        Err(r) => r,
    }
}

async fn invert_handler(
    State(s): State<AppState>,
    p: Result<Json<InvertBody>, JsonRejection>,
) -> Reply {
    match body(p) {
        Ok(b) => {
            run(
                &s,
                Operation::Invert {
                    l: b.l,
                    alphabet: b.alphabet,
                },
            )
            .await
        }
        Err(r) => r,
    }
}

async fn apply_handler(
    State(s): State<AppState>,
    p: Result<Json<ApplyBody>, JsonRejection>,
) -> Reply {
    match body(p) {
        Ok(b) => {
            let op = Operation::Apply {
                word: b.word,
                parts_lengths: b.parts_lengths,
                k: b.k,
                alphabet: b.alphabet,
            };
            run(&s, op).await
        }
        Err(r) => r,
    }
}

async fn search_handler(
    State(s): State<AppState>,
    p: Result<Json<SearchBody>, JsonRejection>,
) -> Reply {
    let b = match body(p) {
        Ok(b) => b,
        Err(r) => return r,
    };
    // counts travel as strings, but accept plain numbers too
    let limit = match b.limit {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s),
        Some(Value::Number(n)) => Some(n.to_string()),
        Some(other) => {
            return Reply(Err(ApiError::new(
                codes::MALFORMED_INPUT,
                format!("limit must be a string or integer, got {other}"),
            )))
        }
    };
    run(
        &s,
        Operation::Search {
            word: b.word,
            k: b.k,
            limit,
            alphabet: b.alphabet,
        },
    )
    .await
}

async fn family_handler(
    State(s): State<AppState>,
    p: Result<Json<FamilyBody>, JsonRejection>,
) -> Reply {
    match body(p) {
        Ok(b) => {
            run(
                &s,
                Operation::Family {
                    k: b.k,
                    ratio: b.ratio,
                },
            )
            .await
        }
        Err(r) => r,
    }
}

fn query_usize(q: &HashMap<String, String>, key: &str) -> Result<usize, Reply> {
    let raw = q.get(key).ok_or_else(|| {
        Reply(Err(ApiError::new(
            codes::MALFORMED_INPUT,
            format!("missing query parameter '{key}'"),
        )))
    })?;
    raw.parse().map_err(|_| {
        Reply(Err(ApiError::new(
            codes::MALFORMED_INPUT,
            format!("query parameter '{key}' is not a non-negative integer"),
        )))
    })
}

async fn count_handler(
    State(s): State<AppState>,
    Query(q): Query<HashMap<String, String>>,
) -> Reply {
    let (n, k) = match (query_usize(&q, "n"), query_usize(&q, "k")) {
        (Ok(n), Ok(k)) => (n, k),
        (Err(r), _) | (_, Err(r)) => return r,
    };
    run(&s, Operation::Count { n, k }).await
}

async fn artin_handler(
    State(s): State<AppState>,
    Query(q): Query<HashMap<String, String>>,
) -> Reply {
    match query_usize(&q, "limit") {
        Ok(limit) => {
            run(
                &s,
                Operation::Artin {
                    limit: limit as u64,
                },
            )
            .await
        }
        Err(r) => r,
    }
}

async fn job_handler(
    State(s): State<AppState>,
    p: Result<Json<JobRequest>, JsonRejection>,
) -> Response {
    let req = match body(p) {
        Ok(r) => r,
        Err(r) => return r.into_response(),
    };
    let flag = Arc::new(AtomicBool::new(false));
    let guard = CancelOnDrop(flag.clone());
    let limits = s.limits.clone();
    let resp = tokio::task::spawn_blocking(move || run_job(req, &limits, Some(flag))).await;
    std::mem::forget(guard);
    match resp {
        Ok(r) => Json(r).into_response(),
        Err(e) => Reply(Err(ApiError::new(codes::INTERNAL, e.to_string()))).into_response(),
    }
}

async fn health() -> Json<Value> {
    Json(json!({ "status": "ok", "version": env!("CARGO_PKG_VERSION") }))
}

async fn fallback() -> Reply {
    Reply(Err(ApiError::new(codes::NOT_FOUND, "no such endpoint")))
}

/// The service's routes, with permissive CORS and a body-size cap.
pub fn router(limits: Limits) -> Router {
    let state = AppState {
        limits: Arc::new(limits),
    };
    Router::new()
        .route("/api/ebwt", post(ebwt_handler))
        .route("/api/bwt", post(bwt_handler))
        .route("/api/invert", post(invert_handler))
        .route("/api/apply", post(apply_handler))
        .route("/api/search", post(search_handler))
        .route("/api/family", post(family_handler))
        .route("/api/job", post(job_handler))
        .route("/api/count", get(count_handler))
        .route("/api/artin", get(artin_handler))
        .route("/api/health", get(health))
        .fallback(fallback)
        .layer(DefaultBodyLimit::max(MAX_BODY_BYTES))
        .layer(CorsLayer::permissive())
        .with_state(state)
}

pub async fn serve(config: Config) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", config.port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(config.limits))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
