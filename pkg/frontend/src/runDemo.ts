/** Command-line entry for the training demo: `npm run demo -- [outDir]`. */

import { demoTrain } from './demoTrain';

async function main() {
  const outDir = process.argv[2] ?? 'demo_out';
  const result = await demoTrain({ outDir });
  for (const m of result.metrics) {
    console.log(
      `${m.regime.padEnd(10)} n=${m.datasetSize} loss=[${m.loss.map((v) => v.toFixed(3)).join(', ')}]`,
    );
  }
  console.log(`metrics: ${result.csvPath}`);
  console.log(`plot: ${result.plotPath}`);
}

main().catch((e) => {
  console.error(e);
  process.exit(1);
});
