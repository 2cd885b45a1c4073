import init, { suggested_envelopes, envelope_table, zeta_op, monoid_summary } from "./pkg/azw_wasm.js";

const $ = (id) => document.getElementById(id);

function call(f, ...args) {
  try {
    return { ok: true, value: JSON.parse(f(...args)) };
  } catch (e) {
    return { ok: false, error: String(e) };
  }
}

function suggest() {
  const r = call(suggested_envelopes, $("env-source").value, $("env-exclude").value);
  if (!r.ok) {
    $("env-verdicts").innerHTML = `<p class="bad">${escape(r.error)}</p>`;
    return;
  }
  $("env-ceiling").value = r.value.ceiling;
  $("env-floor").value = r.value.floor;
  $("env-puiseux").checked = r.value.puiseux;
}

function escape(s) {
  return String(s).replace(/[&<>]/g, (c) => ({ "&": "&amp;", "<": "&lt;", ">": "&gt;" })[c]);
}

function describe(name, v) {
  const cls = v.status === "verified" ? "ok" : "bad";
  let text = `<b>${name}</b>: <span class="${cls}">${v.status}</span>, ${v.witness_count} witnesses`;
  if (v.witness_count) text += ` (${v.witnesses.slice(0, 12).join(", ")}${v.witness_count > 12 ? ", …" : ""})`;
  if (v.violation) {
    const x = v.violation;
    text += `; fails at q = ${x.q}: count ${x.count}, envelope in [${x.floor}, ${x.ceil}]`;
  }
  return `<div>${text}</div>`;
}

function plot(rows) {
  const svg = $("env-plot");
  const W = 900, H = 260, pad = 30;
  const pts = rows.map((r) => ({ q: r.q, a: Number(r.count) - r.q, c: r.ceiling - r.q, f: r.floor - r.q }));
  if (!pts.length) { svg.innerHTML = ""; return; }
  const qmax = pts[pts.length - 1].q;
  const ys = pts.flatMap((p) => [p.a, p.c, p.f]).filter(Number.isFinite);
  const ymin = Math.min(...ys), ymax = Math.max(...ys);
  const x = (q) => pad + ((W - 2 * pad) * q) / qmax;
  const y = (v) => H - pad - ((H - 2 * pad) * (v - ymin)) / (ymax - ymin || 1);
  const line = (key, color) =>
    `<polyline fill="none" stroke="${color}" stroke-width="1.5" points="${pts.map((p) => `${x(p.q)},${y(p[key])}`).join(" ")}"/>`;
  const dots = pts.map((p) => `<circle cx="${x(p.q)}" cy="${y(p.a)}" r="1.6" fill="#333"/>`).join("");
  const axis = `<line x1="${pad}" y1="${y(0)}" x2="${W - pad}" y2="${y(0)}" stroke="#ccc"/>` +
    `<text x="${pad}" y="14" font-size="12">${ymax.toFixed(0)}</text>` +
    `<text x="${pad}" y="${H - 8}" font-size="12">${ymin.toFixed(0)}</text>` +
    `<text x="${W - pad - 40}" y="${H - 8}" font-size="12">q = ${qmax}</text>`;
  svg.innerHTML = axis + line("c", "#b3261e") + line("f", "#1f5fbf") + dots;
}

function table(rows) {
  const head = "<tr><th>q</th><th>count</th><th>ceiling</th><th>floor</th></tr>";
  const body = rows.slice(0, 40).map((r) =>
    `<tr><td>${r.q}</td><td>${r.count}</td><td>${r.ceiling.toFixed(3)}</td><td>${r.floor.toFixed(3)}</td></tr>`).join("");
  $("env-table").innerHTML = `<table>${head}${body}</table><p class="muted">First 40 of ${rows.length} indices.</p>`;
}

function runEnvelopes() {
  $("env-verdicts").textContent = "working…";
  const r = call(envelope_table, $("env-source").value, $("env-exclude").value,
    Number($("env-limit").value), $("env-ceiling").value, $("env-floor").value,
    $("env-puiseux").checked, Number($("env-witnesses").value));
  if (!r.ok) {
    $("env-verdicts").innerHTML = `<p class="bad">${escape(r.error)}</p>`;
    return;
  }
  const v = r.value;
  $("env-verdicts").innerHTML = `<p>${escape(v.source)}, excluded ${JSON.stringify(v.ceiling.excluded)}</p>` +
    describe("ceiling", v.ceiling) + describe("floor", v.floor);
  plot(v.rows);
  table(v.rows);
}

function runZeta() {
  const r = call(zeta_op, $("zeta-op").value, $("zeta-first").value, $("zeta-second").value);
  $("zeta-out").textContent = r.ok ? JSON.stringify(r.value, null, 2) : r.error;
}

const zetaDefaults = {
  soule: ["t + 2t^{1/2} + 1", ""],
  tensor: ["1 / (s (s-1/2))", "1 / (s (s-1/2))"],
  funceq: ["1 / (s (s-1/2)^2 (s-1))", "1"],
};

function runMonoid() {
  const r = call(monoid_summary, $("monoid-json").value, $("monoid-exclude").value);
  $("monoid-out").textContent = r.ok ? JSON.stringify(r.value, null, 2) : r.error;
}

await init();
$("env-preset").addEventListener("change", () => { $("env-source").value = $("env-preset").value; suggest(); });
$("env-suggest").addEventListener("click", suggest);
$("env-run").addEventListener("click", runEnvelopes);
$("zeta-op").addEventListener("change", () => {
  [$("zeta-first").value, $("zeta-second").value] = zetaDefaults[$("zeta-op").value];
});
$("zeta-run").addEventListener("click", runZeta);
$("monoid-run").addEventListener("click", runMonoid);
suggest();
runEnvelopes();
runZeta();
runMonoid();
