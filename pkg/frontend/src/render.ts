// DOM rendering for the answering UI. Objects are shown as labels, or as
// images when a label points at one (both case-study styles: city names,
// photo files).

import { QuestionView, ResultView, StateView, VoteName } from './api.js';
import { circularLayout, parseDominanceDot } from './dot.js';
import { FlowState, progressModel } from './flow.js';

const IMAGE_RE = /\.(png|jpe?g|gif|webp|svg)$/i;

export function objectCard(label: string): string {
  if (IMAGE_RE.test(label)) {
    return `<img class="object-media" src="${escapeHtml(label)}" alt="${escapeHtml(label)}">`;
  }
  return `<div class="object-label">${escapeHtml(label)}</div>`;
}

export function renderQuestion(question: QuestionView): string {
  return `
    <div class="question">
      <h2>Which is better on <em>${escapeHtml(question.criterion)}</em>?</h2>
      <div class="pair">
        <div class="side">${objectCard(question.x)}</div>
        <div class="vs">vs</div>
        <div class="side">${objectCard(question.y)}</div>
      </div>
      <div class="choices">
        <button data-vote="prefer_x">${escapeHtml(question.x)} is better</button>
        <button data-vote="indifferent">Equally good</button>
        <button data-vote="prefer_y">${escapeHtml(question.y)} is better</button>
        <button data-vote="skip" class="skip">Not sure (skip)</button>
      </div>
    </div>`;
}

export function renderProgress(state: StateView): string {
  const p = progressModel(state);
  const pct = (100 * p.fraction).toFixed(1);
  return `
    <div class="progress">
      <span class="stat confirmed" title="confirmed Pareto-optimal">&#10003; ${p.confirmed}</span>
      <span class="stat unknown" title="undetermined">? ${p.unknown}</span>
      <span class="stat dominated" title="confirmed dominated">&#10007; ${p.dominated}</span>
      <span class="stat asked">${p.asked}/${p.total} questions (${pct}% of brute force)</span>
    </div>`;
}

export function renderTerminal(result: ResultView, dot: string): string {
  const pareto = result.pareto.length
    ? result.pareto.map((label) => `<li>${objectCard(label)}</li>`).join('')
    : '<li class="none">none - every object is dominated</li>';
  return `
    <div class="terminal">
      <h2>All done after ${result.asked} answered comparisons</h2>
      <h3>Pareto-optimal objects</h3>
      <ul class="pareto">${pareto}</ul>
      <h3>Dominance graph</h3>
      ${renderDominanceSvg(dot, 420, 320)}
    </div>`;
}

export function renderDominanceSvg(dot: string, width: number, height: number): string {
  const graph = parseDominanceDot(dot);
  const nodes = circularLayout(graph, width, height);
  const byLabel = new Map(nodes.map((n) => [n.label, n]));
  const parts: string[] = [];
  parts.push(
    `<svg class="dominance" viewBox="0 0 ${width} ${height}" width="${width}" height="${height}">`,
    '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z"/></marker></defs>',
  );
  for (const edge of graph.edges) {
    const a = byLabel.get(edge.from);
    const b = byLabel.get(edge.to);
    if (!a || !b) continue;
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const len = Math.hypot(dx, dy) || 1;
    const trim = 22;
    const x1 = a.x + (dx / len) * trim;
    const y1 = a.y + (dy / len) * trim;
    const x2 = b.x - (dx / len) * trim;
    const y2 = b.y - (dy / len) * trim;
    parts.push(
      `<line x1="${x1.toFixed(1)}" y1="${y1.toFixed(1)}" x2="${x2.toFixed(1)}" y2="${y2.toFixed(1)}" marker-end="url(#arrow)"/>`,
    );
  }
  for (const node of nodes) {
    const cls = node.pareto ? 'node pareto' : 'node';
    parts.push(
      `<g class="${cls}"><circle cx="${node.x.toFixed(1)}" cy="${node.y.toFixed(1)}" r="18"/>` +
        `<text x="${node.x.toFixed(1)}" y="${(node.y + 4).toFixed(1)}" text-anchor="middle">${escapeHtml(node.label)}</text></g>`,
    );
  }
  parts.push('</svg>');
  return parts.join('');
}

export function renderFlowState(state: FlowState): string {
  switch (state.kind) {
    case 'loading':
      return '<p class="loading">Loading&hellip;</p>';
    case 'question':
      return renderProgress(state.state) + renderQuestion(state.question);
    case 'terminal':
      return renderProgress(state.state) + renderTerminal(state.result, state.dot);
    case 'error':
      return `<div class="error"><h2>Something went wrong</h2><p>${escapeHtml(state.message)}</p></div>`;
  }
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export type VoteHandler = (vote: VoteName) => void;

export function bindChoices(root: HTMLElement, onVote: VoteHandler): void {
  root.querySelectorAll<HTMLButtonElement>('button[data-vote]').forEach((button) => {
    button.addEventListener('click', () => onVote(button.dataset.vote as VoteName));
  });
}
