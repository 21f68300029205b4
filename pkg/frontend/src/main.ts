// Browser entry point: join an existing session via ?session=<id>, or
// create one from the setup form and answer it question by question.

import { Client } from './api.js';
import { AnsweringFlow } from './flow.js';
import { bindChoices, escapeHtml, renderFlowState } from './render.js';

const client = new Client('');

function appRoot(): HTMLElement {
  const root = document.getElementById('app');
  if (!root) throw new Error('missing #app element');
  return root;
}

function startFlow(sessionId: string): void {
  const root = appRoot();
  const flow = new AnsweringFlow(client, sessionId, respondentId());
  flow.onChange((state) => {
    root.innerHTML = renderFlowState(state);
    if (state.kind === 'question') {
      bindChoices(root, (vote) => void flow.submit(vote));
    }
  });
  void flow.start();
}

function respondentId(): string {
  const key = 'paretoelicit-respondent';
  let id = window.localStorage.getItem(key);
  if (!id) {
    id = `web-${Math.random().toString(36).slice(2, 10)}`;
    window.localStorage.setItem(key, id);
  }
  return id;
}

function renderSetup(): void {
  const root = appRoot();
  root.innerHTML = `
    <div class="setup">
      <h2>New session</h2>
      <label>Objects (one per line)
        <textarea id="objects" rows="6">movie a\nmovie b\nmovie c</textarea>
      </label>
      <label>Criteria (one per line)
        <textarea id="criteria" rows="3">story\nmusic</textarea>
      </label>
      <label>Strategy
        <select id="strategy">
          <option value="frq" selected>fewest remaining questions</option>
          <option value="randomp">random pair</option>
          <option value="randomq">random question</option>
        </select>
      </label>
      <button id="create">Start answering</button>
      <p class="hint">Or open an existing session with <code>?session=&lt;id&gt;</code>.</p>
      <p id="setup-error" class="error-text"></p>
    </div>`;
  const button = document.getElementById('create') as HTMLButtonElement;
  button.addEventListener('click', async () => {
    const read = (id: string) =>
      (document.getElementById(id) as HTMLTextAreaElement).value
        .split('\n')
        .map((s) => s.trim())
        .filter(Boolean);
    const strategy = (document.getElementById('strategy') as HTMLSelectElement).value;
    try {
      const state = await client.createSession({
        objects: read('objects'),
        criteria: read('criteria'),
        strategy,
        k_min: 1,
        theta: 0.51,
        response_cap: 1,
      });
      const url = new URL(window.location.href);
      url.searchParams.set('session', state.id);
      window.history.replaceState(null, '', url.toString());
      startFlow(state.id);
    } catch (err) {
      const target = document.getElementById('setup-error');
      if (target) target.textContent = escapeHtml(err instanceof Error ? err.message : String(err));
    }
  });
}

const params = new URLSearchParams(window.location.search);
const sessionId = params.get('session');
if (sessionId) {
  startFlow(sessionId);
} else {
  renderSetup();
}
