import { describe, expect, it } from 'vitest';

import {
  ApiError,
  QuestionView,
  ResultView,
  SessionApi,
  SessionSpec,
  StateView,
  VoteDelta,
  VoteName,
} from '../src/api.js';
import { AnsweringFlow, FlowState, progressModel } from '../src/flow.js';

function question(id: string): QuestionView {
  return {
    question_id: id,
    x: 'a',
    y: 'b',
    criterion: 'story',
    choices: ['prefer_x', 'indifferent', 'prefer_y', 'skip'],
  };
}

function state(partial: Partial<StateView>): StateView {
  return {
    id: 's1',
    status: 'active',
    objects: ['a', 'b'],
    criteria: ['story'],
    confirmed: [],
    unknown: ['a', 'b'],
    dominated: [],
    asked: 0,
    derived: 0,
    remaining_candidates: 2,
    brute_force_total: 1,
    progress: 0,
    question: question('q1'),
    tally: { prefer_x: 0, prefer_y: 0, indifferent: 0, skipped: 0 },
    ...partial,
  };
}

/** Scripted fake service: a queue of canned responses per method. */
class FakeApi implements SessionApi {
  states: StateView[] = [];
  voteResults: (VoteDelta | ApiError)[] = [];
  result: ResultView = { id: 's1', terminal: true, pareto: ['a'], dominated: ['b'], asked: 1 };
  dot = 'digraph dominance {\n  "a" [label="a" peripheries=2 style=bold];\n  "a" -> "b";\n}\n';
  votesSeen: { questionId: string; vote: VoteName }[] = [];

  createSession(_spec: SessionSpec): Promise<StateView> {
    return Promise.resolve(this.states[0]);
  }
  getQuestion(): Promise<QuestionView> {
    const s = this.states[0];
    if (!s.question) return Promise.reject(new ApiError(409, 'session_terminal', 'terminal'));
    return Promise.resolve(s.question);
  }
  submitVote(_sid: string, questionId: string, vote: VoteName): Promise<VoteDelta> {
    this.votesSeen.push({ questionId, vote });
    const next = this.voteResults.shift();
    if (!next) throw new Error('no scripted vote result left');
    if (next instanceof ApiError) return Promise.reject(next);
    return Promise.resolve(next);
  }
  getState(): Promise<StateView> {
    if (this.states.length > 1) return Promise.resolve(this.states.shift()!);
    return Promise.resolve(this.states[0]);
  }
  getResult(): Promise<ResultView> {
    return Promise.resolve(this.result);
  }
  getDominanceDot(): Promise<string> {
    return Promise.resolve(this.dot);
  }
}

describe('AnsweringFlow', () => {
  it('renders the open question and submits votes with its id', async () => {
    const api = new FakeApi();
    api.states = [state({})];
    api.voteResults = [
      {
        question_id: 'q1',
        finalized: false,
        outcome: null,
        terminal: false,
        tally: { prefer_x: 0, prefer_y: 0, indifferent: 0, skipped: 1 },
      },
    ];
    const flow = new AnsweringFlow(api, 's1');
    await flow.start();
    expect(flow.current.kind).toBe('question');
    await flow.submit('skip');
    expect(api.votesSeen).toEqual([{ questionId: 'q1', vote: 'skip' }]);
    // Not finalized: the same question stays on screen.
    expect(flow.current.kind).toBe('question');
    if (flow.current.kind === 'question') {
      expect(flow.current.question.question_id).toBe('q1');
    }
  });

  it('silently refetches after a stale-question rejection', async () => {
    const api = new FakeApi();
    api.states = [state({}), state({ asked: 1, question: question('q2') })];
    api.voteResults = [new ApiError(409, 'stale_question', 'stale')];
    const flow = new AnsweringFlow(api, 's1');
    const seen: FlowState[] = [];
    flow.onChange((s) => seen.push(s));
    await flow.start();
    await flow.submit('prefer_x');
    expect(flow.current.kind).toBe('question');
    if (flow.current.kind === 'question') {
      expect(flow.current.question.question_id).toBe('q2');
    }
    expect(seen.some((s) => s.kind === 'error')).toBe(false);
  });

  it('moves to the terminal screen with result and graph', async () => {
    const api = new FakeApi();
    api.states = [
      state({}),
      state({ status: 'terminal', question: null, asked: 1, confirmed: ['a'], unknown: [], dominated: ['b'] }),
    ];
    api.voteResults = [
      {
        question_id: 'q1',
        finalized: true,
        outcome: 'x_better',
        terminal: true,
        tally: { prefer_x: 1, prefer_y: 0, indifferent: 0, skipped: 0 },
        next_question: null,
      },
    ];
    const flow = new AnsweringFlow(api, 's1');
    await flow.start();
    await flow.submit('prefer_x');
    expect(flow.current.kind).toBe('terminal');
    if (flow.current.kind === 'terminal') {
      expect(flow.current.result.pareto).toEqual(['a']);
      expect(flow.current.dot).toContain('"a" -> "b"');
    }
  });

  it('surfaces unknown sessions as an error screen', async () => {
    const api = new FakeApi();
    api.getState = () => Promise.reject(new ApiError(404, null, 'no session'));
    const flow = new AnsweringFlow(api, 'missing');
    await flow.start();
    expect(flow.current.kind).toBe('error');
  });
});

describe('progressModel', () => {
  it('summarizes the partition and progress fraction', () => {
    const model = progressModel(
      state({
        confirmed: ['a'],
        unknown: [],
        dominated: ['b'],
        asked: 9,
        brute_force_total: 45,
        status: 'terminal',
      }),
    );
    expect(model).toEqual({
      confirmed: 1,
      unknown: 0,
      dominated: 1,
      asked: 9,
      total: 45,
      fraction: 0.2,
      done: true,
    });
  });
});
