use std::sync::Arc;

use catbox::service::{self, AppState, Config, SeedMode};
use catbox_core::fsm::{BoxState, Event};
use serde_json::{json, Value};

struct Server {
    rt: tokio::runtime::Runtime,
    base: String,
    app: Arc<AppState>,
    client: reqwest::Client,
}

impl Server {
    fn start(seed_mode: SeedMode) -> Server {
        let rt = tokio::runtime::Builder::new_multi_thread()
            .worker_threads(4)
            .enable_all()
            .build()
            .unwrap();
        let app = AppState::new(Config {
            seed_mode,
            ..Config::default()
        });
        let listener = rt
            .block_on(tokio::net::TcpListener::bind("127.0.0.1:0"))
            .unwrap();
        let base = format!("http://{}", listener.local_addr().unwrap());
        rt.spawn(service::serve(listener, app.clone()));
        Server {
            rt,
            base,
            app,
            client: reqwest::Client::new(),
        }
    }

    fn post(&self, path: &str, body: Value) -> (u16, Value) {
        self.rt.block_on(async {
            let r = self
                .client
                .post(format!("{}{path}", self.base))
                .json(&body)
                .send()
                .await
                .unwrap();
            let status = r.status().as_u16();
            let text = r.text().await.unwrap();
            (status, serde_json::from_str(&text).unwrap_or(Value::Null))
        })
    }

    fn post_raw(&self, path: &str, body: &'static str) -> u16 {
        self.rt.block_on(async {
            self.client
                .post(format!("{}{path}", self.base))
                .header("content-type", "application/json")
                .body(body)
                .send()
                .await
                .unwrap()
                .status()
                .as_u16()
        })
    }

    fn get(&self, path: &str) -> (u16, String) {
        self.rt.block_on(async {
            let r = self.client.get(format!("{}{path}", self.base)).send().await.unwrap();
            (r.status().as_u16(), r.text().await.unwrap())
        })
    }

    fn delete(&self, path: &str) -> u16 {
        self.rt.block_on(async {
            self.client
                .delete(format!("{}{path}", self.base))
                .send()
                .await
                .unwrap()
                .status()
                .as_u16()
        })
    }

    fn new_box(&self, body: Value) -> String {
        let (status, v) = self.post("/boxes", body);
        assert_eq!(status, 201);
        v["box_id"].as_str().unwrap().to_string()
    }

    fn event(&self, id: &str, event: &str) -> (u16, Value) {
        self.post(&format!("/boxes/{id}/events"), json!({ "event": event }))
    }
}

#[test]
fn prepare_select_measure_over_http() {
    let s = Server::start(SeedMode::PerBoxRandom);
    let (status, created) = s.post("/boxes", json!({}));
    assert_eq!(status, 201);
    assert!(created["seed"].is_u64());
    let id = created["box_id"].as_str().unwrap();

    let (_, r) = s.event(id, "prepare");
    assert_eq!(r["panel"]["display_ids"], json!(["MSG_PLUS"]));
    let (_, r) = s.event(id, "select_s");
    assert_eq!(r["panel"]["led"], "green");
    let (status, r) = s.event(id, "measure");
    assert_eq!(status, 200);
    let entries = r["new_log_entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["result"]["record"]["outcome_label"], "+1");

    let (status, view) = s.get(&format!("/boxes/{id}"));
    assert_eq!(status, 200);
    let view: Value = serde_json::from_str(&view).unwrap();
    assert_eq!(view["box_id"], id);
    assert_eq!(view["led"], "green");
    assert_eq!(view["message"], "Outcome: +1\nState: |+> = (|dead>+|alive>)/sqrt2");
    assert_eq!(view["buttons"]["measure"], true);

    let (_, r) = s.event(id, "lid_open");
    assert_eq!(r["panel"]["led"], "white");
    assert_eq!(r["new_log_entries"].as_array().unwrap().len(), 2);
}

#[test]
fn empty_body_creates_box_and_fixed_mode_uses_seed() {
    let s = Server::start(SeedMode::Fixed(17));
    let (status, created) = s.rt.block_on(async {
        let r = s.client.post(format!("{}/boxes", s.base)).send().await.unwrap();
        (r.status().as_u16(), r.json::<Value>().await.unwrap())
    });
    assert_eq!(status, 201);
    assert_eq!(created["seed"], 17);
    let (_, created) = s.post("/boxes", json!({ "seed": 5 }));
    assert_eq!(created["seed"], 5);
}

#[test]
fn error_statuses() {
    let s = Server::start(SeedMode::Fixed(1));
    assert_eq!(s.get("/boxes/nope").0, 404);
    assert_eq!(s.get("/boxes/nope/transcript").0, 404);
    assert_eq!(s.event("nope", "prepare").0, 404);
    assert_eq!(s.delete("/boxes/nope"), 404);

    let id = s.new_box(json!({}));
    let (status, body) = s.event(&id, "jump");
    assert_eq!(status, 400);
    assert_eq!(body["code"], "BAD_REQUEST");
    assert_eq!(s.post_raw(&format!("/boxes/{id}/events"), "{not json"), 400);
    assert_eq!(s.post_raw(&format!("/boxes/{id}/events"), r#"{"evnt":"prepare"}"#), 400);
    assert_eq!(s.post_raw("/boxes", r#"{"seed":"x"}"#), 400);
    assert_eq!(s.post_raw("/experiments/trials", r#"{"prep":"pure","obs":"h","n":0}"#), 400);
    assert_eq!(s.post_raw("/experiments/trials", r#"{"prep":"cat","obs":"h","n":3}"#), 400);
    assert_eq!(s.post_raw("/experiments/bell", r#"{"angles":[0,1,2]}"#), 400);

    assert_eq!(s.delete(&format!("/boxes/{id}")), 204);
    assert_eq!(s.get(&format!("/boxes/{id}")).0, 404);
}

#[test]
fn held_box_answers_409_and_log_is_untouched() {
    let s = Server::start(SeedMode::Fixed(2));
    let id = s.new_box(json!({}));
    s.event(&id, "prepare");
    let (status, body) = s
        .app
        .hold_writer(&id, |_guard| s.event(&id, "measure"))
        .unwrap();
    assert_eq!(status, 409);
    assert_eq!(body["code"], "CONFLICT");
    let (_, t) = s.get(&format!("/boxes/{id}/transcript"));
    assert_eq!(t.lines().count(), 1);
}

#[test]
fn concurrent_events_grow_transcript_by_winners_only() {
    let s = Server::start(SeedMode::Fixed(3));
    let id = s.new_box(json!({}));
    let mut expected = 0;
    for round in 0..50 {
        let event = if round % 2 == 0 { "lid_open" } else { "lid_close" };
        let url = format!("{}/boxes/{id}/events", s.base);
        let (a, b) = s.rt.block_on(async {
            let send = || async {
                let r = s.client.post(&url).json(&json!({ "event": event })).send().await.unwrap();
                let status = r.status().as_u16();
                (status, r.json::<Value>().await.unwrap())
            };
            tokio::join!(send(), send())
        });
        for (status, body) in [a, b] {
            match status {
                200 => expected += body["new_log_entries"].as_array().unwrap().len(),
                409 => assert_eq!(body["code"], "CONFLICT"),
                other => panic!("unexpected status {other}"),
            }
        }
    }
    let (_, t) = s.get(&format!("/boxes/{id}/transcript"));
    assert_eq!(t.lines().count(), expected);
}

#[test]
fn transcript_is_append_consistent_and_matches_fsm() {
    let s = Server::start(SeedMode::Fixed(11));
    let id = s.new_box(json!({}));
    let events = ["prepare", "select_h", "measure", "select_s", "measure", "lid_open", "prepare", "lid_close"];
    let mut previous = String::new();
    for e in events {
        s.event(&id, e);
        let (status, t) = s.get(&format!("/boxes/{id}/transcript"));
        assert_eq!(status, 200);
        assert!(t.starts_with(&previous));
        assert!(t.len() > previous.len());
        previous = t;
    }
    let expected = BoxState::replay(11, events.iter().map(|e| e.parse::<Event>().unwrap()));
    assert_eq!(previous, expected.transcript_jsonl());
}

#[test]
fn experiment_endpoints() {
    let s = Server::start(SeedMode::PerBoxRandom);
    let (status, t) = s.post("/experiments/trials", json!({"prep": "pure:0", "obs": "s", "n": 100, "seed": 1}));
    assert_eq!(status, 200);
    assert_eq!(t["outcomes"][0], json!({"label": "+1", "count": 100, "frequency": 1.0}));

    let (_, v) = s.post("/experiments/distinguish", json!({"prep": "mixed", "n": 50, "seed": 7}));
    assert_eq!(v["decision"], "mixed");
    assert_eq!(v["minus_count"], 24);

    let (_, r) = s.post("/experiments/bell", json!({}));
    assert!((r["analytic"].as_f64().unwrap() + 2.0 * std::f64::consts::SQRT_2).abs() < 1e-9);
    assert_eq!(r["lhv_bound"], 2.0);
    let (_, r) = s.post(
        "/experiments/bell",
        json!({"angles": [0, "pi/2", "pi/4", "3pi/4"], "n": 20000, "seed": 4}),
    );
    let sampled = &r["sampled"];
    assert!((sampled["estimate"].as_f64().unwrap() - r["analytic"].as_f64().unwrap()).abs()
        <= 5.0 * sampled["std_error"].as_f64().unwrap());
    assert_eq!(sampled["seed"], 4);
}
