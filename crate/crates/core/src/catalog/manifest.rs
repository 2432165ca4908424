use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Lattice,
    Group,
    Pair,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: EntryKind,
    pub parameters: &'static str,
    pub provenance: &'static str,
}

const fn entry(
    name: &'static str,
    kind: EntryKind,
    parameters: &'static str,
    provenance: &'static str,
) -> CatalogEntry {
    CatalogEntry {
        name,
        kind,
        parameters,
        provenance,
    }
}

/// Every constructor reachable from the command line.
pub fn manifest() -> Vec<CatalogEntry> {
    use EntryKind::*;
    vec![
        entry("two-dim", Pair, "s >= 1", "two-dimensional family G(s): [y,x] = p^s y, action 1 + p^s"),
        entry("G0", Pair, "s >= 0 or inf", "Heisenberg-type groups [x,y] = z^(p^s); s = inf is abelian Z_p^3"),
        entry("G1", Pair, "s >= 1", "[y_i,x] = y_i^(p^s)"),
        entry("G2", Pair, "s, r >= 1, d", "[y1,x] = y1^(p^s) y2^(p^(s+r) d), [y2,x] = y1^(p^(s+r)) y2^(p^s)"),
        entry("G3", Pair, "s, r >= 0, d; s >= 1 or (r >= 1, p | d)", "[y1,x] = y2^(p^s d), [y2,x] = y1^(p^s) y2^(p^(s+r))"),
        entry("G4", Pair, "s + r >= 1", "[y1,x] = y2^(p^(s+r)), [y2,x] = y1^(p^s)"),
        entry("G5", Pair, "s + r >= 1", "[y1,x] = y2^(p^(s+r) rho), [y2,x] = y1^(p^s)"),
        entry("p3-pair", Pair, "p >= 5", "Lie rings of order p^3: [y,x] = p y with px = p^2 y = 0, and Heisenberg of exponent p"),
        entry("dim-p", Pair, "p >= 5", "dimension-p group acting by x_i -> x_i x_(i+1), x_(p-1) -> x_(p-1) x_1^p, and its lattice"),
        entry("sl2tri", Lattice, "p >= 5", "[x,y] = h, [x,h] = -2p x, [y,h] = 2p y"),
        entry("sl1delta", Lattice, "p >= 5", "[x,y] = p z, [x,z] = p rho y, [y,z] = -x"),
        entry("levi", Lattice, "k >= 2, p >= 5", "powerful lattice x, y, h, a, b in gl_3 whose radical has no complement"),
        entry("p2-plus", Group, "p = 2, s >= 2 or inf", "G+(s): x acts on y by 1 + 2^s"),
        entry("p2-minus", Group, "p = 2, s >= 2 or inf", "G-(s): x acts on y by -1 - 2^s"),
    ]
}
