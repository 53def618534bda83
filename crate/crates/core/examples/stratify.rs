// Stratifications of the blow-up of P^2 at one rational divisor in each of
// four chambers, and the variation between neighbours.

use toric_vsit::divisor::picard_basis;
use toric_vsit::fan::parse_fan;
use toric_vsit::instability::PotentialTable;
use toric_vsit::linalg::QVec;
use toric_vsit::stratify::{classify_variation, stratify, stratum_structure, to_poset};

fn main() -> toric_vsit::Result<()> {
    let fan = parse_fan(include_str!("../fixtures/bl_pt_p2.json"))?;
    let table = PotentialTable::build(&fan)?;
    let basis = picard_basis(&fan, 2)?;

    let mut previous = None;
    for coords in [[7, 2], [7, 3], [3, 2], [6, 5]] {
        let d = basis.embed(&QVec::from_ints(&coords))?;
        let s = stratify(&table, &d)?;
        println!("D = {}:", d.0);
        for st in s.unstable() {
            let shape = stratum_structure(fan.n_rays(), st)?;
            println!(
                "  {:<28} norm2 {:<6} {}",
                st.label(),
                st.norm2.to_string(),
                shape
            );
        }
        if let Some(p) = &previous {
            println!("  variation from previous: {}", classify_variation(p, &s));
        }
        previous = Some(s);
    }
    if let Some(s) = previous {
        print!("{}", to_poset(&s).to_dot());
    }
    Ok(())
}
