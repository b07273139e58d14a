// Expects the wasm-bindgen output in ./pkg (see README).
import init, { weights, autocorrelation_abs2, eigenfunction_density } from "./pkg/gkstates_wasm_demo.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function plot(canvas, xs, series, opts = {}) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 30;
  ctx.clearRect(0, 0, w, h);
  const all = series.flatMap((s) => s.ys);
  const xmin = Math.min(...xs), xmax = Math.max(...xs);
  const ymin = Math.min(0, ...all), ymax = Math.max(...all);
  const sx = (x) => pad + ((x - xmin) / (xmax - xmin || 1)) * (w - 2 * pad);
  const sy = (y) => h - pad - ((y - ymin) / (ymax - ymin || 1)) * (h - 2 * pad);
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(pad, sy(0));
  ctx.lineTo(w - pad, sy(0));
  ctx.stroke();
  ctx.fillStyle = "#333";
  ctx.font = "11px sans-serif";
  ctx.fillText(xmin.toPrecision(3), pad, h - 10);
  ctx.fillText(xmax.toPrecision(3), w - pad - 30, h - 10);
  ctx.fillText(ymax.toPrecision(3), 2, sy(ymax) + 10);
  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.fillStyle = s.color;
    if (opts.bars) {
      const bw = Math.max(1, (w - 2 * pad) / xs.length - 1);
      xs.forEach((x, i) => ctx.fillRect(sx(x) - bw / 2, sy(s.ys[i]), bw, sy(0) - sy(s.ys[i])));
    } else {
      ctx.beginPath();
      xs.forEach((x, i) => (i ? ctx.lineTo(sx(x), sy(s.ys[i])) : ctx.moveTo(sx(x), sy(s.ys[i]))));
      ctx.stroke();
    }
  }
}

function guarded(fn) {
  return () => {
    $("status").textContent = "";
    try {
      fn();
    } catch (e) {
      $("status").textContent = String(e);
    }
  };
}

function strided(arr, stride, k) {
  const out = [];
  for (let i = k; i < arr.length; i += stride) out.push(arr[i]);
  return out;
}

function runWeights() {
  const out = weights(num("alpha"), num("upsilon"), num("n0"));
  const probs = Array.from(out.subarray(1));
  const cut = probs.findLastIndex((p) => p > 1e-6) + 1;
  $("weights-info").textContent = `J = ${out[0].toFixed(4)}`;
  plot($("weights"), probs.slice(0, cut).map((_, n) => n), [{ ys: probs.slice(0, cut), color: "#1f5fa8" }], { bars: true });
}

function runAuto() {
  const out = autocorrelation_abs2(num("alpha"), num("upsilon"), num("n0"), num("samples"), num("horizon"));
  plot($("auto"), strided(out, 2, 0), [{ ys: strided(out, 2, 1), color: "#b0361f" }]);
}

function runPsi() {
  const out = eigenfunction_density(num("alpha"), num("upsilon"), num("level"), num("points"));
  plot($("psi"), strided(out, 3, 0), [
    { ys: strided(out, 3, 1), color: "#1f5fa8" },
    { ys: strided(out, 3, 2), color: "#2e8b3a" },
  ]);
}

await init();
$("run-weights").addEventListener("click", guarded(runWeights));
$("run-auto").addEventListener("click", guarded(runAuto));
$("run-psi").addEventListener("click", guarded(runPsi));
guarded(runWeights)();
