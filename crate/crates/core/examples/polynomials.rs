// Size-resolved counts and entropies along the acene series.

use kekule::count::{entropy, independence_polynomial, matching_polynomial};
use kekule::decomposition::min_fill_nice;
use kekule::parse_smiles;

const ACENES: [(&str, &str); 4] = [
    ("benzene", "C1=CC=CC=C1"),
    ("naphthalene", "C1=CC=C2C=CC=CC2=C1"),
    ("anthracene", "C1=CC=C2C=C3C=CC=CC3=CC2=C1"),
    ("tetracene", "C1=CC=C2C=C3C=C4C=CC=CC4=CC3=CC2=C1"),
];

fn run() -> String {
    let mut out = String::new();
    for (name, smiles) in ACENES {
        let g = parse_smiles(smiles).expect("valid SMILES").graph;
        let nd = min_fill_nice(&g);
        let mp = matching_polynomial(&g, &nd).expect("decomposition fits");
        let ip = independence_polynomial(&g, &nd).expect("decomposition fits");
        out += &format!(
            "{name:<12} m(k) = {mp}\n{:<12} i(k) = {ip}\n{:<12} H_match = {:.4}  H_ind = {:.4}\n",
            "",
            "",
            entropy(&mp).unwrap(),
            entropy(&ip).unwrap()
        );
    }
    out
}

fn main() {
    print!("{}", run());
}
