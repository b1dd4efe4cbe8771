//! Kept in its own binary: it mutates the process environment.

use lbrep_cli::dispatch;
use serde_json::Value;

fn seed_of(args: &[&str]) -> Value {
    let out = dispatch(args);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    v["manifest"]["seed"].clone()
}

#[test]
fn environment_overrides_the_seed() {
    let args = ["lbrep", "bmw-check", "--N", "2"];
    std::env::remove_var("LBREP_SEED");
    assert_eq!(seed_of(&args), 0x1B5EED);
    std::env::set_var("LBREP_SEED", "0x2A");
    assert_eq!(seed_of(&args), 42);
    std::env::set_var("LBREP_SEED", "not a seed");
    assert_eq!(dispatch(&args).code, 2);
    std::env::remove_var("LBREP_SEED");
}
