import init, { exponent_curve, progression, alpha_diff } from "./pkg/etacong_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => parseInt($(id).value, 10) || 0;

function call(f, ...args) {
  try {
    return JSON.parse(f(...args));
  } catch (e) {
    return { error: String(e.message || e) };
  }
}

function axes(ctx, w, h, pad, xmax, ymax) {
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, h - pad);
  ctx.lineTo(w - pad, h - pad);
  ctx.stroke();
  ctx.fillStyle = "#555";
  ctx.fillText("0", pad - 12, h - pad + 4);
  ctx.fillText(String(ymax), pad - 24, pad + 4);
  ctx.fillText(String(xmax), w - pad - 10, h - pad + 14);
  return {
    x: (v) => pad + (v / xmax) * (w - 2 * pad),
    y: (v) => h - pad - (v / ymax) * (h - 2 * pad),
  };
}

function drawCurve() {
  const out = call(exponent_curve, BigInt(num("curve-c")), BigInt(num("curve-d")), num("curve-r"));
  const canvas = $("curve-plot");
  const ctx = canvas.getContext("2d");
  if (out.error) {
    $("curve-info").innerHTML = `<span class="err">${out.error}</span>`;
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    return;
  }
  const rmax = out.exponents.length - 1;
  const band = out.bound ?? 0;
  const ymax = Math.max(1, Math.ceil(Math.max(...out.exponents, out.slope_line[rmax] + band)));
  const s = axes(ctx, canvas.width, canvas.height, 30, rmax, ymax);

  if (out.bound !== null) {
    ctx.fillStyle = "rgba(80, 130, 220, 0.12)";
    ctx.beginPath();
    out.slope_line.forEach((v, r) => ctx.lineTo(s.x(r), s.y(Math.min(ymax, v + band))));
    for (let r = rmax; r >= 0; r--) ctx.lineTo(s.x(r), s.y(Math.max(0, out.slope_line[r] - band)));
    ctx.fill();
  }
  ctx.strokeStyle = "#58c";
  ctx.setLineDash([4, 4]);
  ctx.beginPath();
  out.slope_line.forEach((v, r) => ctx.lineTo(s.x(r), s.y(v)));
  ctx.stroke();
  ctx.setLineDash([]);

  ctx.strokeStyle = "#c33";
  ctx.beginPath();
  out.exponents.forEach((a, r) => {
    if (r > 0) ctx.lineTo(s.x(r), s.y(out.exponents[r - 1]));
    ctx.lineTo(s.x(r), s.y(a));
  });
  ctx.stroke();

  const bound = out.bound === null ? "undefined (c + 11d = 0)" : `±${out.bound.toFixed(3)}`;
  $("curve-info").textContent =
    `α = ${out.alpha}; A_${rmax} = ${out.exponents[rmax]}; band around αr/2: ${bound}`;
}

function drawProgression() {
  const out = call(progression, BigInt(num("prog-c")), BigInt(num("prog-d")), num("prog-r"), num("prog-m"));
  const canvas = $("prog-plot");
  const ctx = canvas.getContext("2d");
  if (out.error) {
    $("prog-text").innerHTML = `<span class="err">${out.error}</span>`;
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    return;
  }
  const k = out.k;
  const height = (v) => (v.kind === "finite" ? v.value : v.kind === "at_least" ? v.value : k);
  const vals = out.valuations.map(height);
  const s = axes(ctx, canvas.width, canvas.height, 30, vals.length, k);
  const bw = Math.max(1, (canvas.width - 60) / vals.length - 1);
  out.valuations.forEach((v, m) => {
    ctx.fillStyle = v.kind === "finite" ? "#58c" : "#aac";
    ctx.fillRect(s.x(m), s.y(vals[m]), bw, s.y(0) - s.y(vals[m]));
  });
  ctx.strokeStyle = "#c33";
  ctx.beginPath();
  ctx.moveTo(s.x(0), s.y(out.statement.exponent));
  ctx.lineTo(s.x(vals.length), s.y(out.statement.exponent));
  ctx.stroke();
  const low = Math.min(...vals);
  $("prog-text").textContent =
    `${out.text}   observed minimum ${low} (values at K = ${k} mean "at least K")`;
}

function drawAlpha() {
  const out = call(alpha_diff);
  if (out.error) {
    $("alpha-info").innerHTML = `<span class="err">${out.error}</span>`;
    return;
  }
  const bad = out.cells.filter((c) => c.embedded !== c.computed);
  $("alpha-info").textContent =
    `${out.matched} of ${out.cells.length} cells agree. ` +
    (bad.length ? "Red cells show printed/recomputed." : "");
  let html = "<table class=alpha><tr><th></th>";
  for (let j = 1; j <= 24; j++) html += `<th>${j}</th>`;
  html += "<th>24, c+11d&lt;0</th></tr>";
  for (let row = 0; row < 5; row++) {
    html += `<tr><th>${24 * row}</th>`;
    const cells = out.cells.filter((c) => c.cell.row === 24 * row);
    const ordered = [...cells.filter((c) => !c.cell.negative), ...cells.filter((c) => c.cell.negative)];
    for (const c of ordered) {
      const same = c.embedded === c.computed;
      html += same ? `<td>${c.embedded}</td>` : `<td class=bad>${c.embedded}/${c.computed}</td>`;
    }
    html += "</tr>";
  }
  $("alpha-grid").innerHTML = html + "</table>";
}

await init();
for (const id of ["curve-c", "curve-d", "curve-r"]) $(id).addEventListener("input", drawCurve);
$("prog-go").addEventListener("click", drawProgression);
drawCurve();
drawProgression();
drawAlpha();
