/** Minimal dependency-free SVG line chart for the demo metrics. */

export interface Series {
  name: string;
  values: number[];
}

const COLORS = ['#1f77b4', '#ff7f0e', '#2ca02c', '#d62728', '#9467bd'];

export function lineChartSvg(series: Series[], title: string, yLabel: string): string {
  const width = 640;
  const height = 420;
  const margin = { top: 48, right: 150, bottom: 48, left: 64 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;

  const allY = series.flatMap((s) => s.values);
  const maxX = Math.max(...series.map((s) => s.values.length - 1), 1);
  const minY = Math.min(...allY);
  const maxY = Math.max(...allY);
  const padY = (maxY - minY || 1) * 0.05;
  const y0 = minY - padY;
  const y1 = maxY + padY;

  const sx = (x: number) => margin.left + (x / maxX) * plotW;
  const sy = (y: number) => margin.top + (1 - (y - y0) / (y1 - y0)) * plotH;

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" font-family="sans-serif" font-size="12">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
    `<text x="${width / 2}" y="24" text-anchor="middle" font-size="15">${title}</text>`,
    `<text x="${margin.left / 3}" y="${margin.top + plotH / 2}" text-anchor="middle" transform="rotate(-90 ${margin.left / 3} ${margin.top + plotH / 2})">${yLabel}</text>`,
    `<text x="${margin.left + plotW / 2}" y="${height - 12}" text-anchor="middle">epoch</text>`,
  ];

  for (let t = 0; t <= 4; t++) {
    const y = y0 + (t / 4) * (y1 - y0);
    parts.push(`<line x1="${margin.left}" y1="${sy(y)}" x2="${margin.left + plotW}" y2="${sy(y)}" stroke="#ddd"/>`);
    parts.push(`<text x="${margin.left - 8}" y="${sy(y) + 4}" text-anchor="end">${y.toFixed(3)}</text>`);
  }
  for (let x = 0; x <= maxX; x++) {
    parts.push(`<text x="${sx(x)}" y="${margin.top + plotH + 18}" text-anchor="middle">${x + 1}</text>`);
  }
  parts.push(`<rect x="${margin.left}" y="${margin.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#888"/>`);

  series.forEach((s, i) => {
    const color = COLORS[i % COLORS.length];
    const points = s.values.map((v, x) => `${sx(x).toFixed(1)},${sy(v).toFixed(1)}`).join(' ');
    parts.push(`<polyline points="${points}" fill="none" stroke="${color}" stroke-width="2"/>`);
    const ly = margin.top + 16 + i * 18;
    parts.push(`<line x1="${width - margin.right + 12}" y1="${ly - 4}" x2="${width - margin.right + 36}" y2="${ly - 4}" stroke="${color}" stroke-width="2"/>`);
    parts.push(`<text x="${width - margin.right + 42}" y="${ly}">${s.name}</text>`);
  });

  parts.push('</svg>');
  return parts.join('\n');
}
