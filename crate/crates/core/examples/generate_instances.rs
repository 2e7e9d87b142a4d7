//! Seeded instances written in the text format and read back.

use udg_steiner::instance_gen::{mark_terminals, random_udg};
use udg_steiner::io::{parse_instance, write_instance};

fn main() -> udg_steiner::Result<()> {
    let base = random_udg(8, 40, 6, 2024)?;
    let inst = mark_terminals(&base, 3, 7)?;
    let text = write_instance(&inst);
    print!("{text}");
    assert_eq!(parse_instance(&text)?, inst);
    assert_eq!(random_udg(8, 40, 6, 2024)?, base);
    Ok(())
}
