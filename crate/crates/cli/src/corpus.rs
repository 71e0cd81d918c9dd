//! Bundled example scripts with their expected values.

pub struct Example {
    pub name: &'static str,
    pub summary: &'static str,
    /// Marked `# LONG`: only run when explicitly requested.
    pub long: bool,
    pub source: &'static str,
}

macro_rules! example {
    ($name:literal, $summary:literal) => {{
        let source = include_str!(concat!("../corpus/", $name, ".fib"));
        Example { name: $name, summary: $summary, long: source.starts_with("# LONG"), source }
    }};
}

pub fn examples() -> Vec<Example> {
    vec![
        example!("nilpotent-ring", "maximal ideal of a ring with nilpotents, grade one"),
        example!("sparse-seventh", "sparse degree-seven plane ideal, f1 = f0 - 1"),
        example!("semigroup-6-11-15-31", "ideals of a numerical semigroup ring"),
        example!("semigroup-extension", "semigroup ring with two free variables adjoined"),
        example!("quotient-xy-y3", "spread three with grade two"),
        example!("ratliff-rush-gap", "spread three with the intersection condition failing"),
        example!("plane-ratliff-rush", "plane ideal that is not Ratliff-Rush closed"),
        example!("nonmonomial-reduction", "non-monomial reduction with reduction number five"),
    ]
}

pub fn find(name: &str) -> Option<Example> {
    examples().into_iter().find(|e| e.name == name)
}
