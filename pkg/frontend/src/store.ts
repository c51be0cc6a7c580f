import type { MoodInfo } from './api';

// Client session state: token + role, the scenario being worked on, and the
// server-ordered mood catalog every picker renders from.
export interface SessionState {
  sessionToken: string | null;
  role: 'citizen' | 'policymaker' | null;
  handle: string | null;
  activeScenarioId: string | null;
  moodCatalog: MoodInfo[];
}

type Listener = () => void;

export class Store {
  private state: SessionState = {
    sessionToken: null,
    role: null,
    handle: null,
    activeScenarioId: null,
    moodCatalog: [],
  };
  private listeners = new Set<Listener>();

  get(): SessionState {
    return this.state;
  }

  set(patch: Partial<SessionState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener();
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }
}

export const store = new Store();
