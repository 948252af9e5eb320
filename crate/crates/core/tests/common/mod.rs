#![allow(dead_code)]

pub mod bleu_oracle;
pub mod gen;

use std::path::{Path, PathBuf};

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn fixture_lines(name: &str) -> Vec<String> {
    read_fixture(name).lines().map(str::to_string).collect()
}

pub fn write_lines(path: &Path, lines: &[String]) {
    std::fs::write(path, gramnoise::fsio::join_lines(lines)).unwrap();
}

pub fn read_fixture_path(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}
