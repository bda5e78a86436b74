import init, { PhaseSpaceDemo, weno_probe, weno_curve, advect_demo } from "./pkg/vlasov_sl_web.js";

const $ = (id) => document.getElementById(id);

function fail(el, err) {
  el.textContent = String(err && err.message ? err.message : err);
  el.classList.add("error");
}

// Line plot of several series sharing axes. Each series is {xs, ys, color, dots}.
function plot(canvas, series, opts = {}) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 36;
  ctx.clearRect(0, 0, w, h);
  const xs = series.flatMap((s) => s.xs).filter(Number.isFinite);
  const ys = series.flatMap((s) => s.ys).filter(Number.isFinite);
  if (!xs.length) return;
  let [x0, x1] = opts.xRange ?? [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  if (x1 === x0) x1 = x0 + 1;
  if (y1 - y0 < 1e-12) { y0 -= 0.5; y1 += 0.5; }
  const margin = 0.05 * (y1 - y0);
  y0 -= margin; y1 += margin;
  const px = (x) => pad + ((x - x0) / (x1 - x0)) * (w - 2 * pad);
  const py = (y) => h - pad + ((y - y0) / (y1 - y0)) * (2 * pad - h);

  ctx.strokeStyle = "#888";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  ctx.fillText(y1.toPrecision(3), 2, pad + 4);
  ctx.fillText(y0.toPrecision(3), 2, h - pad);
  ctx.fillText(x0.toPrecision(3), pad, h - pad + 14);
  ctx.fillText(x1.toPrecision(3), w - pad - 24, h - pad + 14);
  if (opts.title) ctx.fillText(opts.title, pad, pad - 8);

  for (const s of series) {
    ctx.strokeStyle = ctx.fillStyle = s.color;
    if (s.dots) {
      s.xs.forEach((x, k) => {
        ctx.beginPath();
        ctx.arc(px(x), py(s.ys[k]), 3.5, 0, 2 * Math.PI);
        ctx.fill();
      });
      continue;
    }
    ctx.lineWidth = s.width ?? 1.5;
    ctx.beginPath();
    s.xs.forEach((x, k) => (k ? ctx.lineTo(px(x), py(s.ys[k])) : ctx.moveTo(px(x), py(s.ys[k]))));
    ctx.stroke();
  }
}

// ---- phase space ----------------------------------------------------------

let demo = null;
let running = false;

function colormap(t) {
  // Dark blue through teal to yellow.
  const r = Math.round(255 * Math.min(1, Math.max(0, 1.6 * t - 0.4)));
  const g = Math.round(255 * Math.min(1, 1.2 * t));
  const b = Math.round(255 * Math.max(0, 0.6 - 0.6 * t + 0.4 * (1 - Math.abs(2 * t - 1))));
  return [r, g, b];
}

function drawDistribution() {
  const canvas = $("sim-f");
  const nx = demo.nx(), nv = demo.nv();
  const f = demo.distribution();
  let lo = Infinity, hi = -Infinity;
  for (const v of f) { lo = Math.min(lo, v); hi = Math.max(hi, v); }
  const span = hi - lo || 1;
  const img = new ImageData(nx, nv);
  for (let i = 0; i < nx; i++) {
    for (let j = 0; j < nv; j++) {
      const [r, g, b] = colormap((f[i * nv + j] - lo) / span);
      const p = 4 * ((nv - 1 - j) * nx + i);
      img.data[p] = r; img.data[p + 1] = g; img.data[p + 2] = b; img.data[p + 3] = 255;
    }
  }
  const off = new OffscreenCanvas(nx, nv);
  off.getContext("2d").putImageData(img, 0, 0);
  const ctx = canvas.getContext("2d");
  ctx.imageSmoothingEnabled = false;
  ctx.drawImage(off, 0, 0, canvas.width, canvas.height);
}

function drawHistory() {
  const hist = demo.field_history();
  const ts = [], ys = [];
  for (let k = 0; k < hist.length; k += 2) {
    if (hist[k + 1] > 0) { ts.push(hist[k]); ys.push(Math.log10(hist[k + 1])); }
  }
  plot($("sim-e"), [{ xs: ts, ys, color: "#1f5fbf" }], { title: "log10 ||E||_2" });
  const [l1, l2, en, ent] = demo.deviations();
  const e = (v) => v.toExponential(2).padStart(10);
  $("sim-readout").textContent =
    `t = ${demo.time().toFixed(3)}   steps = ${demo.steps()}\n` +
    `relative deviation  L1 ${e(l1)}  L2 ${e(l2)}\n` +
    `                    energy ${e(en)}  entropy ${e(ent)}`;
}

function resetSim() {
  running = false;
  $("sim-toggle").textContent = "Run";
  $("sim-readout").classList.remove("error");
  try {
    demo?.free();
    demo = new PhaseSpaceDemo(
      $("sim-problem").value,
      Number($("sim-n").value),
      Number($("sim-cfl").value),
      Number($("sim-order").value),
      Number($("sim-interp").value),
    );
    drawDistribution();
    drawHistory();
  } catch (err) {
    demo = null;
    fail($("sim-readout"), err);
  }
}

function tick() {
  if (!running || !demo) return;
  try {
    demo.advance(1);
    drawDistribution();
    drawHistory();
    requestAnimationFrame(tick);
  } catch (err) {
    running = false;
    fail($("sim-readout"), err);
  }
}

// ---- WENO explorer --------------------------------------------------------

const stencil = [1, 1, 1, 1, 1, 1];
const wenoState = { xi: -0.5, logEps: -6 };

function slider(label, min, max, step, value, onInput) {
  const wrap = document.createElement("label");
  const input = Object.assign(document.createElement("input"), { type: "range", min, max, step, value });
  const out = document.createElement("span");
  const show = () => (out.textContent = Number(input.value).toFixed(2));
  input.addEventListener("input", () => { show(); onInput(Number(input.value)); });
  show();
  wrap.append(label, input, out);
  return wrap;
}

function buildWenoControls() {
  const box = $("weno-controls");
  const names = ["f(i-3)", "f(i-2)", "f(i-1)", "f(i)", "f(i+1)", "f(i+2)"];
  names.forEach((name, k) => {
    stencil[k] = k < 3 ? 0 : 1;
    box.append(slider(name, -1, 2, 0.01, stencil[k], (v) => { stencil[k] = v; updateWeno(); }));
  });
  box.append(slider("ξ", -1, 0, 0.01, wenoState.xi, (v) => { wenoState.xi = v; updateWeno(); }));
  box.append(slider("log10 ε", -12, 2, 0.5, wenoState.logEps, (v) => { wenoState.logEps = v; updateWeno(); }));
}

function updateWeno() {
  const eps = 10 ** wenoState.logEps;
  const values = Float64Array.from(stencil);
  const c = weno_curve(values, eps, 101);
  const xi = [], wv = [], lv = [];
  for (let k = 0; k < c.length; k += 3) { xi.push(c[k]); wv.push(c[k + 1]); lv.push(c[k + 2]); }
  const p = weno_probe(values, wenoState.xi, eps);
  plot($("weno-plot"), [
    { xs: xi, ys: lv, color: "#c33", width: 1 },
    { xs: xi, ys: wv, color: "#1f5fbf", width: 2 },
    { xs: [-3, -2, -1, 0, 1, 2], ys: [...stencil], color: "#222", dots: true },
    { xs: [wenoState.xi], ys: [p[12]], color: "#1f5fbf", dots: true },
  ], { xRange: [-3, 2], title: "nodes, WENO6 (blue), degree-5 Lagrange (red)" });

  const fmt = (v) => (Math.abs(v) < 1e-3 && v !== 0 ? v.toExponential(2) : v.toFixed(4));
  const rows = [["", "m = 0", "m = 1", "m = 2"]];
  [["p_m(ξ)", 0], ["γ_m", 3], ["β_m", 6], ["ω_m", 9]].forEach(([name, at]) =>
    rows.push([name, ...p.slice(at, at + 3).map(fmt)]));
  rows.push(["WENO", fmt(p[12]), "", ""], ["Lagrange", fmt(p[13]), "", ""]);
  $("weno-table").innerHTML = rows
    .map((r, k) => `<tr>${r.map((c) => (k ? `<td>${c}</td>` : `<th>${c}</th>`)).join("")}</tr>`)
    .join("");
}

// ---- advection ------------------------------------------------------------

function runAdvection() {
  const readout = $("adv-readout");
  readout.classList.remove("error");
  const n = Number($("adv-n").value);
  try {
    const out = advect_demo($("adv-shape").value, n, Number($("adv-cfl").value), Number($("adv-periods").value));
    const dx = (2 * Math.PI) / n;
    const xs = Array.from({ length: n }, (_, i) => (i + 0.5) * dx);
    plot($("adv-plot"), [
      { xs, ys: Array.from(out.slice(n, 2 * n)), color: "#999", width: 1 },
      { xs, ys: Array.from(out.slice(0, n)), color: "#1f5fbf", width: 2 },
    ], { title: "computed (blue) and exact (grey)" });
    readout.textContent = `mean |error| ${out[2 * n].toExponential(3)}   max mass drift ${out[2 * n + 1].toExponential(2)}`;
  } catch (err) {
    fail(readout, err);
  }
}

// ---- wiring ---------------------------------------------------------------

await init();
$("status").textContent = "";
$("sim-reset").addEventListener("click", resetSim);
for (const id of ["sim-problem", "sim-n", "sim-cfl", "sim-order", "sim-interp"]) {
  $(id).addEventListener("change", resetSim);
}
$("sim-toggle").addEventListener("click", () => {
  if (!demo) return;
  running = !running;
  $("sim-toggle").textContent = running ? "Pause" : "Run";
  if (running) requestAnimationFrame(tick);
});
$("adv-run").addEventListener("click", runAdvection);
buildWenoControls();
resetSim();
updateWeno();
runAdvection();
