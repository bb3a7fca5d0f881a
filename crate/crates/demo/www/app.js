import init, { corpus, unroll, growth, check } from "./pkg/schemata_demo.js";

const $ = (id) => document.getElementById(id);
const svgNs = "http://www.w3.org/2000/svg";

function el(tag, attrs = {}, text) {
  const e = tag.startsWith("svg:") ? document.createElementNS(svgNs, tag.slice(4)) : document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  if (text !== undefined) e.textContent = text;
  return e;
}

function label(node) {
  const s = el("span");
  s.append(el("span", { class: "rule" }, node.rule), node.sequent);
  return s;
}

// Nested <details>; subtrees below depth 6 start collapsed.
function renderTree(node, depth = 0) {
  if (node.premises.length === 0) {
    const d = el("div", { class: "leaf" });
    d.append(label(node));
    return d;
  }
  const d = el("details");
  if (depth < 6) d.open = true;
  const s = el("summary");
  s.append(label(node));
  d.append(s);
  for (const p of node.premises) d.append(renderTree(p, depth + 1));
  return d;
}

let catalog;

function currentSchema() {
  return catalog.schemata.find((s) => s.name === $("schema").value);
}

function showUnroll() {
  const alpha = Number($("alpha").value);
  $("alpha-out").value = alpha;
  const r = JSON.parse(unroll($("schema").value, alpha));
  const tree = $("tree");
  tree.replaceChildren();
  if (r.error || !r.accepted) {
    $("summary").className = "rejected";
    $("summary").textContent = r.error ?? r.failures.join("\n");
    return;
  }
  $("summary").className = "";
  $("summary").textContent =
    `${r.end_sequent}: ${r.inferences} inferences in LK, ${r.unrolled_inferences} with ℰ, ${r.rewrite_steps} rewrite steps`;
  tree.append(renderTree($("with-e").checked ? r.unrolled : r.proof));
}

function showGrowth() {
  const s = currentSchema();
  const rows = JSON.parse(growth(s.name, s.max_alpha)).rows;
  const svg = $("chart");
  svg.replaceChildren();
  if (rows.length === 0) return;
  const log = $("log").checked;
  const [w, h, left, bottom] = [480, 260, 44, 28];
  const f = (v) => (log ? Math.log2(Math.max(v, 1)) : v);
  const maxA = rows[rows.length - 1].alpha || 1;
  const maxV = Math.max(...rows.map((r) => f(r.unrolled_inferences))) || 1;
  const x = (a) => left + (a / maxA) * (w - left - 10);
  const y = (v) => h - bottom - (f(v) / maxV) * (h - bottom - 10);
  svg.append(el("svg:line", { class: "axis", x1: left, y1: h - bottom, x2: w - 10, y2: h - bottom }));
  svg.append(el("svg:line", { class: "axis", x1: left, y1: 10, x2: left, y2: h - bottom }));
  for (const r of rows) svg.append(el("svg:text", { x: x(r.alpha) - 3, y: h - bottom + 14 }, r.alpha));
  svg.append(el("svg:text", { x: w / 2, y: h - 2 }, "α"));
  const top = rows[rows.length - 1];
  svg.append(el("svg:text", { x: 2, y: y(top.unrolled_inferences) + 4 }, top.unrolled_inferences));
  svg.append(el("svg:text", { x: 2, y: h - bottom }, log ? 1 : 0));
  const series = [
    ["inferences", "#06c"],
    ["unrolled_inferences", "#c60"],
  ];
  series.forEach(([key, colour], i) => {
    const points = rows.map((r) => `${x(r.alpha)},${y(r[key])}`).join(" ");
    svg.append(el("svg:polyline", { class: "line", points, stroke: colour }));
    svg.append(el("svg:text", { x: left + 10, y: 20 + 14 * i, fill: colour }, key === "inferences" ? "LK" : "with ℰ"));
  });
}

function loadScript() {
  $("source").value = catalog.scripts.find((s) => s.name === $("script").value).text;
  $("verdict").textContent = "";
}

function runCheck() {
  const r = JSON.parse(check($("script").value, $("source").value));
  const out = $("verdict");
  out.className = r.error || r.verdict === "rejected" ? "rejected" : "";
  if (r.error) {
    out.textContent = r.error;
    return;
  }
  const lines = [`verdict: ${r.verdict} (${r.steps} steps, ${r.groups} groups)`, ...r.failures];
  if (r.verdict === "proof" && r.interpretation) lines.push("", r.interpretation);
  out.textContent = lines.join("\n");
}

await init();
catalog = JSON.parse(corpus());
for (const s of catalog.schemata) $("schema").append(el("option", { value: s.name }, s.name));
for (const s of catalog.scripts) $("script").append(el("option", { value: s.name }, s.name));

$("schema").addEventListener("change", () => {
  $("alpha").max = currentSchema().max_alpha;
  if (Number($("alpha").value) > currentSchema().max_alpha) $("alpha").value = currentSchema().max_alpha;
  showUnroll();
  showGrowth();
});
$("alpha").addEventListener("input", showUnroll);
$("with-e").addEventListener("change", showUnroll);
$("log").addEventListener("change", showGrowth);
$("script").addEventListener("change", loadScript);
$("check").addEventListener("click", runCheck);

$("alpha").max = currentSchema().max_alpha;
showUnroll();
showGrowth();
loadScript();
