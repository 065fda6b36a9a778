//! The example model shipped in models/ must stay byte-identical to the
//! built-in fixture. Regenerate with UPDATE_GOLDENS=1.

use std::path::PathBuf;

use netmodel::fixture::campus_network;
use netmodel::model::ModelGraph;

fn model_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models/campus.json")
}

#[test]
fn shipped_model_matches_the_fixture() {
    let expected = campus_network().to_json_string() + "\n";
    let path = model_path();
    if std::env::var_os("UPDATE_GOLDENS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &expected).unwrap();
    }
    let on_disk = std::fs::read_to_string(&path)
        .expect("models/campus.json missing; run with UPDATE_GOLDENS=1 to create it");
    assert_eq!(on_disk, expected, "models/campus.json is out of date");

    let reloaded = ModelGraph::load(&path).unwrap();
    assert_eq!(reloaded.to_json_string() + "\n", expected);
}
