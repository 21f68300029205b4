// Typed client for the live-session HTTP API. All aggregation logic
// (thresholds, k_min, caps) lives server-side; this client only moves JSON.

export type VoteName = 'prefer_x' | 'prefer_y' | 'indifferent' | 'skip';

export interface QuestionView {
  question_id: string;
  x: string;
  y: string;
  criterion: string;
  choices: VoteName[];
}

export interface TallyView {
  prefer_x: number;
  prefer_y: number;
  indifferent: number;
  skipped: number;
}

export interface StateView {
  id: string;
  status: 'active' | 'terminal';
  objects: string[];
  criteria: string[];
  confirmed: string[];
  unknown: string[];
  dominated: string[];
  asked: number;
  derived: number;
  remaining_candidates: number;
  brute_force_total: number;
  progress: number;
  question: QuestionView | null;
  tally: TallyView;
}

export interface VoteDelta {
  question_id: string;
  finalized: boolean;
  outcome: string | null;
  terminal: boolean;
  tally: TallyView;
  next_question?: QuestionView | null;
}

export interface ResultView {
  id: string;
  terminal: boolean;
  pareto: string[];
  dominated: string[];
  asked: number;
}

export interface SessionSpec {
  objects: string[];
  criteria: string[];
  strategy?: string;
  k_min?: number;
  theta?: number;
  response_cap?: number | null;
  seed?: number;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly kind: string | null,
    message: string,
  ) {
    super(message);
  }

  get staleQuestion(): boolean {
    return this.status === 409 && this.kind === 'stale_question';
  }

  get sessionTerminal(): boolean {
    return this.status === 409 && this.kind === 'session_terminal';
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** What the answering flow needs from the service; Client is the live one. */
export interface SessionApi {
  createSession(spec: SessionSpec): Promise<StateView>;
  getQuestion(sessionId: string): Promise<QuestionView>;
  submitVote(
    sessionId: string,
    questionId: string,
    vote: VoteName,
    respondent: string,
  ): Promise<VoteDelta>;
  getState(sessionId: string): Promise<StateView>;
  getResult(sessionId: string): Promise<ResultView>;
  getDominanceDot(sessionId: string): Promise<string>;
}

export class Client implements SessionApi {
  constructor(
    private readonly base: string = '',
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.base + path, init);
    if (!resp.ok) {
      let kind: string | null = null;
      let message = `${resp.status} ${resp.statusText}`;
      try {
        const body = (await resp.json()) as { error?: string; kind?: string };
        kind = body.kind ?? null;
        if (body.error) message = body.error;
      } catch {
        // non-JSON error body; keep the status line
      }
      throw new ApiError(resp.status, kind, message);
    }
    return (await resp.json()) as T;
  }

  createSession(spec: SessionSpec): Promise<StateView> {
    return this.request<StateView>('/sessions', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(spec),
    });
  }

  getQuestion(sessionId: string): Promise<QuestionView> {
    return this.request<QuestionView>(`/sessions/${sessionId}/question`);
  }

  submitVote(sessionId: string, questionId: string, vote: VoteName, respondent: string): Promise<VoteDelta> {
    return this.request<VoteDelta>(`/sessions/${sessionId}/votes`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ question_id: questionId, vote, respondent }),
    });
  }

  getState(sessionId: string): Promise<StateView> {
    return this.request<StateView>(`/sessions/${sessionId}/state`);
  }

  getResult(sessionId: string): Promise<ResultView> {
    return this.request<ResultView>(`/sessions/${sessionId}/result`);
  }

  async getDominanceDot(sessionId: string): Promise<string> {
    const resp = await this.fetchFn(`${this.base}/sessions/${sessionId}/dominance.dot`);
    if (!resp.ok) throw new ApiError(resp.status, null, `${resp.status} ${resp.statusText}`);
    return resp.text();
  }
}
