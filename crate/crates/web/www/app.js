import init, { analyze, fidelity_curve, teleport } from "./pkg/qdel_web.js";

const $ = (id) => document.getElementById(id);
const fmt = (x) => (x !== 0 && Math.abs(x) < 1e-3 ? x.toExponential(4) : x.toFixed(6));

function state() {
  return { alpha: Number($("alpha").value), m1: Number($("m1").value) };
}

function renderReport(r) {
  const flag = (b) => `<span class="${b ? "yes" : "no"}">${b}</span>`;
  const rows = [
    ["W3", fmt(r.w3)],
    ["W4", fmt(r.w4)],
    ["PPT spectrum", r.ppt_spectrum.map(fmt).join(", ")],
    ["u", r.u.map(fmt).join(", ")],
    ["M", fmt(r.big_m)],
    ["N", fmt(r.big_n)],
    ["F_max", fmt(r.f_max)],
    ["inseparable", flag(r.inseparable)],
    ["Bell violated", flag(r.bell_violated)],
  ];
  if (r.boundary) rows.push(["note", "product state"]);
  $("report").innerHTML = rows.map(([k, v]) => `<tr><td>${k}</td><td>${v}</td></tr>`).join("");
}

function drawCurve(c, alpha) {
  const cv = $("curve");
  const g = cv.getContext("2d");
  const pad = 36, w = cv.width - 2 * pad, h = cv.height - 2 * pad;
  const x = (a) => pad + a * w;
  const y = (v) => pad + (1 - v) * h;
  g.clearRect(0, 0, cv.width, cv.height);

  g.strokeStyle = "#ccc";
  g.fillStyle = "#666";
  g.font = "11px system-ui";
  for (let t = 0; t <= 1.0001; t += 0.25) {
    g.beginPath(); g.moveTo(x(0), y(t)); g.lineTo(x(1), y(t)); g.stroke();
    g.fillText(t.toFixed(2), 4, y(t) + 4);
    g.fillText(t.toFixed(2), x(t) - 10, cv.height - 12);
  }

  g.setLineDash([5, 4]);
  g.strokeStyle = "#888";
  for (const level of [c.classical, 1]) {
    g.beginPath(); g.moveTo(x(0), y(level)); g.lineTo(x(1), y(level)); g.stroke();
  }
  g.setLineDash([]);

  const line = (ys, colour) => {
    g.strokeStyle = colour;
    g.lineWidth = 2;
    g.beginPath();
    c.alpha.forEach((a, i) => (i ? g.lineTo(x(a), y(ys[i])) : g.moveTo(x(a), y(ys[i]))));
    g.stroke();
    g.lineWidth = 1;
  };
  line(c.f_max, "#1f5fbf");
  line(c.big_m, "#c0392b");

  g.strokeStyle = "#222";
  g.beginPath(); g.moveTo(x(alpha), y(0)); g.lineTo(x(alpha), y(1)); g.stroke();
}

let curveKey = null;
let curve = null;

function refresh() {
  const { alpha, m1 } = state();
  $("alpha-out").value = alpha.toFixed(3);
  $("m1-out").value = m1.toFixed(3);
  try {
    renderReport(JSON.parse(analyze(alpha, m1)));
    if (curveKey !== m1) {
      curve = JSON.parse(fidelity_curve(m1, 401));
      curveKey = m1;
    }
    drawCurve(curve, alpha);
    $("status").textContent = "";
  } catch (e) {
    $("status").textContent = String(e);
  }
}

function runTeleport() {
  const { alpha, m1 } = state();
  const samples = Number($("samples").value);
  const seed = Number($("seed").value);
  try {
    const t = JSON.parse(teleport(alpha, m1, samples, seed));
    const s = t.simulated;
    $("teleport-out").textContent = [
      `F_max (formula)    ${fmt(t.formula)}`,
      `F predicted        ${fmt(t.predicted)}`,
      `F channel (exact)  ${fmt(t.channel_exact)}`,
      `F Monte Carlo      ${fmt(s.mean)} +- ${fmt(s.std_error)}  (n = ${s.samples}, seed = ${s.seed})`,
      `det(C)             ${fmt(t.det_c)}  (${t.det_branch === "positive" ? "det > 0" : "det <= 0"})`,
      `consistent         ${t.consistent}`,
    ].join("\n");
  } catch (e) {
    $("teleport-out").textContent = String(e);
  }
}

await init();
$("alpha").addEventListener("input", refresh);
$("m1").addEventListener("input", refresh);
$("run").addEventListener("click", runTeleport);
refresh();
