//! Stateless JSON-over-HTTP service.
//!
//! All routing and computation happens in [`handle`], a pure function of
//! the request; the axum layer only moves bytes in and out.
//!
//! | method | path             | input                         | output                                     |
//! |--------|------------------|-------------------------------|--------------------------------------------|
//! | POST   | `/api/compose`   | `{signature, strict?}`        | `{nodes, matrix, kappa, premagic, irreducible}` |
//! | POST   | `/api/decompose` | `{nodes, matrix, method?}`    | `{signature}` or `{witness, residual}`     |
//! | POST   | `/api/analyze`   | `{signature}`                 | analysis report                            |
//! | POST   | `/api/check`     | `{nodes, matrix}`             | `{premagic, irreducible, idealFlow, unbalancedNodes}` |
//! | POST   | `/api/relate`    | `{sig1, sig2}`                | `{relation}`                               |
//! | POST   | `/api/markov`    | `{nodes, matrix}`             | `{nodes, matrix}`                          |
//! | GET    | `/api/random`    | `?nodes&kappa&seed`           | `{signature}`                              |
//! | GET    | `/api/premier`   | `?complete&selfLoops`         | `{signature, nodes, matrix}`               |
//!
//! Failures answer `{error, detail}` with status 400 for malformed input
//! and 422 when the input is well formed but fails a precondition.

use std::collections::BTreeMap;
use std::str::FromStr;

use axum::body::Bytes;
use axum::http::{header, HeaderValue, Method as HttpMethod, StatusCode, Uri};
use axum::response::{IntoResponse, Response};
use axum::Router;
use clap::ValueEnum;
use ifn_core::render_signature;
use serde_json::{json, Value};
use tokio::net::TcpListener;

use crate::document::{canonical_json, MatrixDocument};
use crate::error::{AppError, AppResult};
use crate::ops::{self, Method};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reply {
    pub status: u16,
    pub body: Value,
}

impl Reply {
    fn ok(body: Value) -> Self {
        Reply { status: 200, body }
    }

    fn error(status: u16, code: &str, detail: impl Into<String>) -> Self {
        Reply {
            status,
            body: json!({"error": code, "detail": detail.into()}),
        }
    }
}

impl From<AppError> for Reply {
    fn from(e: AppError) -> Self {
        Reply::error(e.http_status(), e.code(), e.to_string())
    }
}

pub fn handle(method: &str, path: &str, query: &str, body: &[u8]) -> Reply {
    let expected = match path {
        "/api/compose" | "/api/decompose" | "/api/analyze" | "/api/check" | "/api/relate"
        | "/api/markov" => "POST",
        "/api/random" | "/api/premier" => "GET",
        _ => return Reply::error(404, "NotFound", format!("no endpoint at {path}")),
    };
    if method != expected {
        return Reply::error(
            405,
            "MethodNotAllowed",
            format!("{path} expects {expected}, got {method}"),
        );
    }
    let result = if expected == "POST" {
        json_body(body).and_then(|b| post(path, &b))
    } else {
        get(path, &query_params(query))
    };
    result.map_or_else(Reply::from, Reply::ok)
}

fn post(path: &str, body: &Value) -> AppResult<Value> {
    match path {
        "/api/compose" => {
            let strict = optional_bool(body, "strict")?.unwrap_or(false);
            ops::compose_report(string_field(body, "signature")?, strict)
        }
        "/api/analyze" => ops::analysis_report(string_field(body, "signature")?),
        "/api/decompose" => {
            let method = match body.get("method") {
                None | Some(Value::Null) => Method::default(),
                Some(Value::String(s)) => Method::from_str(s, true).map_err(|_| {
                    AppError::input(
                        "InvalidField",
                        format!("unknown method {s:?}; use greedy or linear"),
                    )
                })?,
                Some(_) => {
                    return Err(AppError::input(
                        "InvalidField",
                        "\"method\" must be a string",
                    ))
                }
            };
            let net = MatrixDocument::from_json(body)?.to_network()?;
            match ops::decompose(&net, method) {
                Ok(sig) => Ok(json!({"signature": render_signature(&sig)})),
                Err(AppError::NonIntegral(w)) => Ok(ops::witness_json(&w)),
                Err(e) => Err(e),
            }
        }
        "/api/check" => {
            let net = MatrixDocument::from_json(body)?.to_network()?;
            let mut out = ops::check_report(&net);
            out["unbalancedNodes"] = ops::unbalanced_nodes(&net);
            Ok(out)
        }
        "/api/relate" => {
            let relation = ops::relate(string_field(body, "sig1")?, string_field(body, "sig2")?)?;
            Ok(json!({"relation": relation}))
        }
        "/api/markov" => {
            let net = ops::markov(&MatrixDocument::from_json(body)?)?;
            Ok(MatrixDocument::from_network(&net).to_json())
        }
        _ => unreachable!("routes are matched in handle"),
    }
}

fn get(path: &str, params: &BTreeMap<String, String>) -> AppResult<Value> {
    match path {
        "/api/random" => {
            let sig = ops::random(
                number_param(params, "nodes")?,
                number_param(params, "kappa")?,
                number_param(params, "seed")?,
            )?;
            Ok(json!({"signature": render_signature(&sig)}))
        }
        "/api/premier" => {
            let self_loops = match params.get("selfLoops").map(String::as_str) {
                None | Some("false") | Some("0") => false,
                Some("true") | Some("1") | Some("") => true,
                Some(other) => {
                    return Err(AppError::input(
                        "InvalidParameter",
                        format!("selfLoops must be true or false, got {other:?}"),
                    ))
                }
            };
            let (sig, net) = ops::premier_complete(number_param(params, "complete")?, self_loops)?;
            Ok(ops::premier_report(&sig, &net))
        }
        _ => unreachable!("routes are matched in handle"),
    }
}

fn json_body(body: &[u8]) -> AppResult<Value> {
    let value: Value = serde_json::from_slice(body).map_err(|e| {
        AppError::input(
            "InvalidJson",
            format!("request body is not valid JSON: {e}"),
        )
    })?;
    if !value.is_object() {
        return Err(AppError::input(
            "InvalidJson",
            "request body must be a JSON object",
        ));
    }
    Ok(value)
}

fn string_field<'a>(body: &'a Value, name: &str) -> AppResult<&'a str> {
    match body.get(name) {
        Some(Value::String(s)) => Ok(s),
        Some(_) => Err(AppError::input(
            "InvalidField",
            format!("\"{name}\" must be a string"),
        )),
        None => Err(AppError::input(
            "MissingField",
            format!("request needs a \"{name}\" field"),
        )),
    }
}

fn optional_bool(body: &Value, name: &str) -> AppResult<Option<bool>> {
    match body.get(name) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::Bool(b)) => Ok(Some(*b)),
        Some(_) => Err(AppError::input(
            "InvalidField",
            format!("\"{name}\" must be a boolean"),
        )),
    }
}

fn query_params(query: &str) -> BTreeMap<String, String> {
    let mut params = BTreeMap::new();
    for (k, v) in form_urlencoded::parse(query.as_bytes()) {
        params
            .entry(k.into_owned())
            .or_insert_with(|| v.into_owned());
    }
    params
}

fn number_param<T: FromStr>(params: &BTreeMap<String, String>, name: &str) -> AppResult<T> {
    let raw = params.get(name).ok_or_else(|| {
        AppError::input(
            "MissingParameter",
            format!("query needs a \"{name}\" parameter"),
        )
    })?;
    raw.parse().map_err(|_| {
        AppError::input(
            "InvalidParameter",
            format!("\"{name}\" must be a nonnegative integer, got {raw:?}"),
        )
    })
}

pub fn router() -> Router {
    Router::new().fallback(dispatch)
}

async fn dispatch(method: HttpMethod, uri: Uri, body: Bytes) -> Response {
    let mut response = if method == HttpMethod::OPTIONS {
        let mut r = StatusCode::NO_CONTENT.into_response();
        let headers = r.headers_mut();
        headers.insert(
            header::ACCESS_CONTROL_ALLOW_METHODS,
            HeaderValue::from_static("GET, POST, OPTIONS"),
        );
        headers.insert(
            header::ACCESS_CONTROL_ALLOW_HEADERS,
            HeaderValue::from_static("content-type"),
        );
        r
    } else {
        let path = uri.path().to_owned();
        let query = uri.query().unwrap_or("").to_owned();
        let method_name = method.as_str().to_owned();
        let reply = tokio::task::spawn_blocking(move || handle(&method_name, &path, &query, &body))
            .await
            .unwrap_or_else(|e| Reply::error(500, "InternalError", e.to_string()));
        let status =
            StatusCode::from_u16(reply.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (
            status,
            [(header::CONTENT_TYPE, "application/json")],
            canonical_json(&reply.body),
        )
            .into_response()
    };
    response.headers_mut().insert(
        header::ACCESS_CONTROL_ALLOW_ORIGIN,
        HeaderValue::from_static("*"),
    );
    response
}

/// Serves until interrupted with Ctrl-C.
pub async fn serve(host: &str, port: u16) -> std::io::Result<()> {
    let listener = TcpListener::bind((host, port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router())
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
