/** Minimal binary PGM (P5) reader/writer for grayscale frames. */

import { readFileSync, writeFileSync } from "fs";

export interface GrayImage {
  width: number;
  height: number;
  pixels: Uint8Array; // row-major, length width * height
}

export function decodePgm(data: Buffer): GrayImage {
  let pos = 0;

  function token(): string {
    while (pos < data.length) {
      const ch = data[pos];
      if (ch === 0x23) {
        // '#' comment runs to end of line
        while (pos < data.length && data[pos] !== 0x0a) pos++;
      } else if (ch === 0x20 || ch === 0x09 || ch === 0x0a || ch === 0x0d) {
        pos++;
      } else {
        break;
      }
    }
    const start = pos;
    while (pos < data.length && !/\s/.test(String.fromCharCode(data[pos]))) pos++;
    return data.subarray(start, pos).toString("ascii");
  }

  if (token() !== "P5") {
    throw new Error("not a binary PGM (P5) file");
  }
  const width = Number(token());
  const height = Number(token());
  const maxval = Number(token());
  if (!Number.isInteger(width) || !Number.isInteger(height) || width <= 0 || height <= 0) {
    throw new Error("bad PGM dimensions");
  }
  if (maxval > 255) {
    throw new Error(`maxval ${maxval} unsupported (must be <= 255)`);
  }
  pos++; // single whitespace after header
  const need = width * height;
  if (pos + need > data.length) {
    throw new Error("truncated PGM pixel data");
  }
  return { width, height, pixels: new Uint8Array(data.subarray(pos, pos + need)) };
}

export function encodePgm(image: GrayImage): Buffer {
  const header = Buffer.from(`P5\n${image.width} ${image.height}\n255\n`, "ascii");
  return Buffer.concat([header, Buffer.from(image.pixels)]);
}

export function readPgmFile(path: string): GrayImage {
  return decodePgm(readFileSync(path));
}

export function writePgmFile(path: string, image: GrayImage): void {
  writeFileSync(path, encodePgm(image));
}
