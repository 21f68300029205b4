// The answering flow: fetch the open question, submit a vote, refresh.
// The UI never chooses question order: it renders exactly what the
// service selected, and every vote carries the question id so the server
// can reject stale submissions. A stale rejection is handled by silently
// refetching the now-open question.

import { ApiError, QuestionView, ResultView, SessionApi, StateView, VoteName } from './api.js';

export type FlowState =
  | { kind: 'loading' }
  | { kind: 'question'; question: QuestionView; state: StateView }
  | { kind: 'terminal'; result: ResultView; state: StateView; dot: string }
  | { kind: 'error'; message: string };

export type FlowListener = (state: FlowState) => void;

export class AnsweringFlow {
  private listeners: FlowListener[] = [];
  current: FlowState = { kind: 'loading' };

  constructor(
    private readonly client: SessionApi,
    readonly sessionId: string,
    private readonly respondent: string = 'browser',
  ) {}

  onChange(listener: FlowListener): void {
    this.listeners.push(listener);
  }

  private emit(state: FlowState): void {
    this.current = state;
    for (const listener of this.listeners) listener(state);
  }

  async start(): Promise<void> {
    await this.refresh();
  }

  async refresh(): Promise<void> {
    let state: StateView;
    try {
      state = await this.client.getState(this.sessionId);
    } catch (err) {
      this.emit({ kind: 'error', message: errorMessage(err) });
      return;
    }
    if (state.status === 'terminal' || state.question === null) {
      await this.finish(state);
      return;
    }
    this.emit({ kind: 'question', question: state.question, state });
  }

  private async finish(state: StateView): Promise<void> {
    try {
      const [result, dot] = await Promise.all([
        this.client.getResult(this.sessionId),
        this.client.getDominanceDot(this.sessionId),
      ]);
      this.emit({ kind: 'terminal', result, state, dot });
    } catch (err) {
      this.emit({ kind: 'error', message: errorMessage(err) });
    }
  }

  /** Submit a vote for the currently rendered question. */
  async submit(vote: VoteName): Promise<void> {
    if (this.current.kind !== 'question') return;
    const questionId = this.current.question.question_id;
    try {
      const delta = await this.client.submitVote(this.sessionId, questionId, vote, this.respondent);
      if (delta.finalized || delta.terminal) {
        await this.refresh();
      } else {
        // Not finalized (more votes needed, or a skip): keep the same
        // question on screen with the updated tally.
        const state = await this.client.getState(this.sessionId);
        if (state.question && state.question.question_id === questionId) {
          this.emit({ kind: 'question', question: state.question, state });
        } else {
          await this.refresh();
        }
      }
    } catch (err) {
      if (err instanceof ApiError && (err.staleQuestion || err.sessionTerminal)) {
        // Someone else finalized this question first; refetch silently.
        await this.refresh();
        return;
      }
      this.emit({ kind: 'error', message: errorMessage(err) });
    }
  }
}

export function errorMessage(err: unknown): string {
  if (err instanceof ApiError) {
    if (err.status === 404) return `Session not found (${err.message})`;
    return err.message;
  }
  return err instanceof Error ? err.message : String(err);
}

export interface ProgressModel {
  confirmed: number;
  unknown: number;
  dominated: number;
  asked: number;
  total: number;
  fraction: number;
  done: boolean;
}

/** Partition summary shown after every finalized outcome. */
export function progressModel(state: StateView): ProgressModel {
  return {
    confirmed: state.confirmed.length,
    unknown: state.unknown.length,
    dominated: state.dominated.length,
    asked: state.asked,
    total: state.brute_force_total,
    fraction: state.brute_force_total > 0 ? state.asked / state.brute_force_total : 0,
    done: state.status === 'terminal',
  };
}
