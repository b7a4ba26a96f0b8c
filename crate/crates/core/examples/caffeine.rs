// Every index of caffeine from its SMILES string.

use kekule::count::run_all;
use kekule::decomposition::min_fill_nice;
use kekule::parse_smiles;

fn run() -> String {
    let mol = parse_smiles("CN1C=NC2=C1C(=O)N(C(=O)N2C)C").expect("valid SMILES");
    let nd = min_fill_nice(&mol.graph);
    let r = run_all(&mol.graph, &nd).expect("decomposition fits");
    format!(
        "caffeine: {} atoms, {} bonds, width {}\n\
         Kekulé structures      {}\n\
         Hosoya index           {}\n\
         Merrifield–Simmons     {}\n\
         matching polynomial    {}\n\
         independence poly.     {}\n\
         matching entropy       {:.4} bits\n\
         independence entropy   {:.4} bits\n",
        r.n,
        r.m,
        r.width,
        r.perfect_matchings,
        r.hosoya,
        r.merrifield_simmons,
        r.matching_poly,
        r.independence_poly,
        r.matching_entropy,
        r.independence_entropy
    )
}

fn main() {
    print!("{}", run());
}
