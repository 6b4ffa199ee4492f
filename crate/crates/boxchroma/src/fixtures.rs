//! The appendix configurations, embedded.
//!
//! Each fixture ships twice: the listing as printed (`appendix/*.txt`) and a
//! JSON document whose metadata comes from the section title, e.g.
//! `521/1/6` is dims (5,2,1) up to axis order, freedom 1, χ 6. For freedom 1
//! the dims are written in the axis order the listing actually uses.

use crate::format::ConfigDocument;

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    /// Short name used on the command line and in file names.
    pub label: &'static str,
    /// Section title.
    pub title: &'static str,
    /// Listing text as printed.
    pub appendix: &'static str,
    pub json: &'static str,
}

macro_rules! fixture {
    ($label:literal, $title:literal) => {
        Fixture {
            label: $label,
            title: $title,
            appendix: include_str!(concat!("../fixtures/appendix/", $label, ".txt")),
            json: include_str!(concat!("../fixtures/", $label, ".json")),
        }
    };
}

pub const FIXTURES: [Fixture; 17] = [
    fixture!("821", "821/2/6"),
    fixture!("311-1", "311/1/4"),
    fixture!("221", "221/1/5"),
    fixture!("521", "521/1/6"),
    fixture!("431", "431/1/6"),
    fixture!("222", "222/1/6"),
    fixture!("611", "611/2/6"),
    fixture!("511", "511/2/6"),
    fixture!("411-2", "411/2/5"),
    fixture!("311-2", "311/2/5"),
    fixture!("211", "211/2/5"),
    fixture!("421", "421/2/6"),
    fixture!("421alt", "421/2/6 (alternate)"),
    fixture!("212", "212/2/6"),
    fixture!("312", "312/2/6"),
    fixture!("412", "412/2/6"),
    fixture!("411-3", "411/3/6"),
];

pub fn fixture(label: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.label == label)
}

impl Fixture {
    pub fn document(&self) -> ConfigDocument {
        ConfigDocument::from_json(self.json).expect("shipped fixtures parse")
    }
}
