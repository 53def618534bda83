// Writes an SVG of the walls of the blown-up Hirzebruch surface on the
// plane a2 + a4 = 1, and one of the blow-up of P^2 in its own chart.

use toric_vsit::ample::{AmpleCone, Slice};
use toric_vsit::divisor::picard_basis;
use toric_vsit::fan::parse_fan;
use toric_vsit::instability::PotentialTable;
use toric_vsit::render::PlotScene;
use toric_vsit::walls::WallAtlas;

fn scene(fan_json: &str, base_cone: usize, slice: Option<&Slice>) -> toric_vsit::Result<PlotScene> {
    let fan = parse_fan(fan_json)?;
    let table = PotentialTable::build(&fan)?;
    let cone = AmpleCone::new(&fan, picard_basis(&fan, base_cone)?)?;
    let atlas = WallAtlas::build(&table, &cone);
    PlotScene::build(&atlas, &cone, slice, 256)
}

fn main() -> toric_vsit::Result<()> {
    let dir = std::env::temp_dir();
    let slice = Slice::parse("1,0,1=1")?;
    let plots = [
        (
            "hirzebruch_slice.svg",
            scene(
                include_str!("../fixtures/bl_pt_hirzebruch.json"),
                0,
                Some(&slice),
            )?,
        ),
        (
            "bl_pt_p2.svg",
            scene(include_str!("../fixtures/bl_pt_p2.json"), 2, None)?,
        ),
    ];
    for (name, s) in plots {
        let drawn = (0..s.curves.len())
            .filter(|&k| !s.trace(k).is_empty())
            .count();
        let path = dir.join(name);
        std::fs::write(&path, s.to_svg())?;
        println!(
            "{}: axes {:?}, {} of {} walls drawn",
            path.display(),
            s.axes,
            drawn,
            s.curves.len()
        );
    }
    Ok(())
}
