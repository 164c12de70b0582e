import { compare, render } from "./charts.js";
import { SchemaMismatch } from "./csv.js";

function usage(): never {
  console.error("usage: spanlab-plots render <sweep.csv> <out-dir>");
  console.error("       spanlab-plots compare <a.csv> <b.csv> <out-dir>");
  process.exit(2);
}

const args = process.argv.slice(2);
try {
  let written: string[];
  if (args[0] === "render" && args.length === 3) {
    written = render(args[1], args[2]);
  } else if (args[0] === "compare" && args.length === 4) {
    written = compare(args[1], args[2], args[3]);
  } else {
    usage();
  }
  for (const path of written) console.log(path);
} catch (err) {
  if (err instanceof SchemaMismatch) {
    console.error(`schema mismatch: ${err.message}`);
    process.exit(1);
  }
  throw err;
}
