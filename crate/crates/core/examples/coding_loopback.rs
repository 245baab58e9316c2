// Differential Manchester framing: encode a payload, show the transmitted
// half-slots, then recover it from a capture-like window.

use occsim::coding::{build_frame, decode_diff_manchester, encode_diff_manchester, extract_code, header_positions};
use occsim::{HalfSlotSequence, Level, Payload};

fn show(slots: &HalfSlotSequence) -> String {
    slots
        .slots()
        .iter()
        .map(|l| if l.is_on() { '#' } else { '.' })
        .collect()
}

pub fn run_example() -> occsim::Result<()> {
    let payload: Payload = "1011010010".parse()?;
    let body = encode_diff_manchester(&payload, Level::On)?;
    println!("payload {payload}");
    println!("body    {}", show(&body));
    assert_eq!(decode_diff_manchester(&body)?, payload);

    let frame = build_frame(&payload)?;
    println!("frame   {}", show(&frame));

    // A capture starts somewhere inside a frame and spans a little over two.
    let stream = frame.concat(&frame).concat(&frame);
    let window = HalfSlotSequence::new(stream.slots()[7..7 + 2 * frame.len() + 3].to_vec());
    println!("window  {}", show(&window));
    println!("headers at {:?}", header_positions(&window));
    let got = extract_code(&window, payload.len());
    println!("decoded {}", got.as_ref().map_or("-".to_string(), |p| p.to_string()));
    assert_eq!(got.as_ref(), Some(&payload));

    let mut ok = 0;
    for v in 0..1024u32 {
        let p = Payload::from_u32(v, 10)?;
        let f = build_frame(&p)?;
        if extract_code(&f.concat(&f).concat(&f), 10) == Some(p) {
            ok += 1;
        }
    }
    println!("{ok}/1024 payloads survive a three-frame loopback");
    Ok(())
}

#[allow(dead_code)]
fn main() -> occsim::Result<()> {
    run_example()
}
