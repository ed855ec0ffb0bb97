/// Identifiers and contents of the datasets compiled into the binary.
pub const BUNDLED: &[(&str, &str)] = &[
    ("su11", include_str!("../../data/su11.toml")),
    ("sp4", include_str!("../../data/sp4.toml")),
    ("gl2", include_str!("../../data/gl2.toml")),
];

pub fn bundled(id: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(name, _)| *name == id).map(|(_, text)| *text)
}
