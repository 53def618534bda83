// The potential table of P^1 x P^1: each row is a symbolic one-parameter
// subgroup, the state sets producing it, and its squared norm.

use toric_vsit::divisor::{picard_basis, Divisor};
use toric_vsit::fan::{parse_fan, RaySet};
use toric_vsit::instability::PotentialTable;

fn main() -> toric_vsit::Result<()> {
    let fan = parse_fan(include_str!("../fixtures/p1xp1.json"))?;
    let table = PotentialTable::build(&fan)?;
    let zeroed = picard_basis(&fan, 2)?.zeroed();
    for e in table.entries() {
        let members: Vec<String> = e.members.iter().map(|m| m.to_string()).collect();
        println!(
            "[{}, [{}], {}]",
            e.vector.restrict(&zeroed),
            members.join(", "),
            e.norm2.restrict(&zeroed)
        );
    }

    // adapted one-parameter subgroup of one state set at a concrete divisor
    let d = Divisor::from_ints(&[2, 0, 1, 0]);
    let ops = table.adapted_ops(RaySet::from_indices([0, 1]), &d)?;
    println!(
        "adapted at {}: lambda {}, norm2 {}, m {}",
        d.0, ops.lambda, ops.norm2, ops.m
    );
    Ok(())
}
