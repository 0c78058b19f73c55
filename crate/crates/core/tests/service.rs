use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use chord_core::service::{router, GameStore};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &axum::Router, method: &str, uri: &str, body: Option<&str>) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map(|b| Body::from(b.to_string())).unwrap_or_else(Body::empty))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap() };
    (status, value)
}

const CIRCLE: &str = r#"{"board":{"kind":"circle","dots":4},"N":2,"m":1,"n":1}"#;

#[tokio::test]
async fn create_and_inspect() {
    let app = router(Arc::new(GameStore::in_memory()));
    let (code, created) = call(&app, "POST", "/games", Some(CIRCLE)).await;
    assert_eq!(code, StatusCode::CREATED);
    let id = created["id"].as_u64().unwrap();
    assert_eq!(created["state"]["statuses"], json!(["uncrossed", "uncrossed", "uncrossed", "uncrossed"]));
    let (code, state) = call(&app, "GET", &format!("/games/{id}"), None).await;
    assert_eq!(code, StatusCode::OK);
    assert_eq!((state["version"].as_u64(), state["turn"].as_u64()), (Some(0), Some(1)));
    let (_, legal) = call(&app, "GET", &format!("/games/{id}/legal"), None).await;
    assert_eq!(legal, json!([[0], [1], [2], [3]]));
}

#[tokio::test]
async fn error_statuses() {
    let app = router(Arc::new(GameStore::in_memory()));
    assert_eq!(call(&app, "GET", "/games/7", None).await.0, StatusCode::NOT_FOUND);
    assert_eq!(call(&app, "POST", "/games/7/moves", Some("[0]")).await.0, StatusCode::NOT_FOUND);
    assert_eq!(call(&app, "GET", "/games/7/legal", None).await.0, StatusCode::NOT_FOUND);
    assert_eq!(call(&app, "POST", "/games", Some("{nope")).await.0, StatusCode::BAD_REQUEST);
    let bad_config = r#"{"board":{"kind":"circle","dots":5},"N":2,"m":1,"n":1}"#;
    assert_eq!(call(&app, "POST", "/games", Some(bad_config)).await.0, StatusCode::BAD_REQUEST);
    let (_, created) = call(&app, "POST", "/games", Some(CIRCLE)).await;
    let moves = format!("/games/{}/moves", created["id"]);
    assert_eq!(call(&app, "POST", &moves, Some(r#"{"dots":"x"}"#)).await.0, StatusCode::BAD_REQUEST);
    assert_eq!(call(&app, "POST", &moves, Some("[0]")).await.0, StatusCode::OK);
    let (code, err) = call(&app, "POST", &moves, Some("[0]")).await;
    assert_eq!(code, StatusCode::CONFLICT);
    assert!(err["error"].is_string());
    assert_eq!(call(&app, "POST", &moves, Some(r#"{"dots":[2],"player":1}"#)).await.0, StatusCode::CONFLICT);
    assert_eq!(call(&app, "POST", &moves, Some("[1, 2]")).await.0, StatusCode::CONFLICT);
}

#[tokio::test]
async fn play_to_a_loss() {
    let app = router(Arc::new(GameStore::in_memory()));
    let (_, created) = call(&app, "POST", "/games", Some(CIRCLE)).await;
    let id = created["id"].as_u64().unwrap();
    let moves = format!("/games/{id}/moves");
    // Opposite dots first, so the next dot completes a balanced adjacent pair.
    let (_, s1) = call(&app, "POST", &moves, Some(r#"{"dots":[0],"player":1}"#)).await;
    let (_, s2) = call(&app, "POST", &moves, Some(r#"{"dots":[2],"player":2}"#)).await;
    let (_, s3) = call(&app, "POST", &moves, Some(r#"{"dots":[1],"player":1}"#)).await;
    let versions: Vec<u64> = [&s1, &s2, &s3].iter().map(|s| s["version"].as_u64().unwrap()).collect();
    assert_eq!(versions, [1, 2, 3]);
    assert_eq!(s3["finished"], true);
    assert_eq!(s3["winner"], 2);
    assert_eq!(s3["witness"]["loser"], 1);
    assert_eq!(s3["witness"]["dots"], json!([1, 2]));
    assert_eq!(call(&app, "GET", &format!("/games/{id}/legal"), None).await.0, StatusCode::CONFLICT);
    assert_eq!(call(&app, "POST", &moves, Some("[3]")).await.0, StatusCode::CONFLICT);
    let (_, latest) = call(&app, "GET", &format!("/games/{id}"), None).await;
    assert_eq!(latest, s3);
}

#[tokio::test]
async fn graph_board_game() {
    let app = router(Arc::new(GameStore::in_memory()));
    let config = r#"{"board":{"kind":"graph","graph":{"vertices":["o"],"edges":[{"id":"a","ends":["o","o"]},{"id":"b","ends":["o","o"]}]},
        "dots":[{"edge":"a","t":"1/4"},{"edge":"a","t":"3/4"},{"edge":"b","t":"1/4"},{"edge":"b","t":"3/4"}]},"N":2,"m":1,"n":1}"#;
    let (code, created) = call(&app, "POST", "/games", Some(config)).await;
    assert_eq!(code, StatusCode::CREATED);
    let moves = format!("/games/{}/moves", created["id"]);
    call(&app, "POST", &moves, Some("[1]")).await;
    let (_, s) = call(&app, "POST", &moves, Some("[2]")).await;
    assert_eq!(s["winner"], 1);
    assert!(s["witness"]["subset"].is_object());
}

#[tokio::test]
async fn concurrent_moves_are_serialised() {
    let store = Arc::new(GameStore::in_memory());
    let app = router(store.clone());
    let (_, created) = call(&app, "POST", "/games", Some(r#"{"board":{"kind":"circle","dots":16},"N":8,"m":1,"n":8}"#)).await;
    let moves = format!("/games/{}/moves", created["id"]);
    let tasks: Vec<_> = (0..16)
        .map(|d| {
            let app = app.clone();
            let moves = moves.clone();
            tokio::spawn(async move { call(&app, "POST", &moves, Some(&format!("[{d}]"))).await })
        })
        .collect();
    let mut versions = Vec::new();
    for t in tasks {
        let (code, s) = t.await.unwrap();
        if code == StatusCode::OK {
            versions.push(s["version"].as_u64().unwrap());
        }
    }
    versions.sort_unstable();
    assert_eq!(versions, (1..=versions.len() as u64).collect::<Vec<_>>());
    let (_, s) = call(&app, "GET", &format!("/games/{}", created["id"]), None).await;
    assert_eq!(s["version"].as_u64().unwrap() as usize, versions.len());
}
