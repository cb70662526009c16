// QR decode helper: reads one JSON request per stdin line
// ({"w": N, "h": N, "rgba": "<base64>"}) and answers one JSON line each,
// {"ok": true, "data": "<base64>"} or {"ok": false, "error": "..."}.
// jsqr exposes the decoded byte-mode content verbatim via binaryData.
const jsQR = require('jsqr');
const readline = require('readline');

const rl = readline.createInterface({ input: process.stdin, terminal: false });
rl.on('line', (line) => {
  if (!line.trim()) return;
  try {
    const req = JSON.parse(line);
    const rgba = Buffer.from(req.rgba, 'base64');
    const pixels = new Uint8ClampedArray(rgba.buffer, rgba.byteOffset, rgba.length);
    const code = jsQR(pixels, req.w, req.h);
    if (!code) {
      console.log(JSON.stringify({ ok: false, error: 'no QR code found' }));
      return;
    }
    const data = Buffer.from(code.binaryData).toString('base64');
    console.log(JSON.stringify({ ok: true, data }));
  } catch (err) {
    console.log(JSON.stringify({ ok: false, error: String((err && err.message) || err) }));
  }
});
