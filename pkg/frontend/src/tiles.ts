/** Tile color entry: click-to-cycle colors and the wire encoding. */

export type TileColor = "X" | "Y" | "G";

export const TILE_CYCLE: readonly TileColor[] = ["X", "Y", "G"];

const VALID = new Set<string>(TILE_CYCLE);

export function cycleColor(color: TileColor): TileColor {
  const i = TILE_CYCLE.indexOf(color);
  if (i < 0) throw new Error(`not a tile color: ${color}`);
  return TILE_CYCLE[(i + 1) % TILE_CYCLE.length] as TileColor;
}

/** Colors for a fresh suggestion row: everything gray. */
export function freshColors(length: number): TileColor[] {
  return Array.from({ length }, () => "X" as TileColor);
}

/** Leftmost letter first, exactly the wire alphabet {G,Y,X}. */
export function encodePattern(colors: readonly TileColor[], length: number): string {
  if (colors.length !== length) {
    throw new Error(`expected ${length} colors, got ${colors.length}`);
  }
  for (const c of colors) {
    if (!VALID.has(c)) throw new Error(`not a tile color: ${c}`);
  }
  return colors.join("");
}

export function decodePattern(wire: string): TileColor[] {
  const out: TileColor[] = [];
  for (const ch of wire) {
    if (!VALID.has(ch)) throw new Error(`bad pattern character: ${ch}`);
    out.push(ch as TileColor);
  }
  return out;
}
