#![allow(dead_code)]

use std::path::PathBuf;

use xkg_core::amr::parse_penman;
use xkg_core::rdf::{parse_turtle_with, ParseOptions, PrefixTable, RdfGraph};
use xkg_core::translate::{build_base_graph, AlignmentMap, LinkTable, RolesetMap};

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

pub fn read(rel: &str) -> String {
    std::fs::read_to_string(fixture(rel)).unwrap()
}

pub fn turtle(text: &str) -> RdfGraph {
    let opts = ParseOptions { preloaded: PrefixTable::standard(), ..Default::default() };
    parse_turtle_with(text, &opts).unwrap()
}

pub fn athlete_base() -> RdfGraph {
    let amr = parse_penman(&read("athlete.amr")).unwrap();
    build_base_graph(&amr, &RolesetMap::builtin(), &AlignmentMap::builtin(), &LinkTable::builtin()).graph
}
