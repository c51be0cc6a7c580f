// Typed client over the JSON API. All displayed numbers come verbatim from
// these payloads; the client never derives aggregates itself.

export interface MoodInfo {
  value: string;
  valence: number;
  arousal: number;
}

export interface Statement {
  statement_id: string;
  text: string;
  position: number;
}

export interface Scenario {
  scenario_id: string;
  owner: string;
  title: string;
  description: string;
  statements: Statement[];
  status: 'draft' | 'published' | 'archived';
  created_at: string;
  published_at: string | null;
}

export interface ImageRef {
  source_url: string;
  thumbnail_url: string;
  attribution: string;
  provider_id: string;
}

export interface ImagePage {
  results: ImageRef[];
  page: number;
  total_available: number | null;
}

export interface Vision {
  vision_id: string;
  scenario_id: string;
  author: string;
  image: ImageRef;
  caption: string;
  mood: string;
  created_at: string;
}

export interface FeedPage {
  items: Vision[];
  page: number;
  page_size: number;
  total: number;
}

export interface Challenge {
  vision_id: string;
  scenario_id: string;
  image: ImageRef;
  caption: string;
  created_at: string;
}

export interface PlayerStats {
  user_id: string;
  scenario_id: string;
  total_points: number;
  guesses_made: number;
  exact_matches: number;
  current_streak: number;
}

export interface GuessResult {
  correct: boolean;
  actual_mood: string;
  points_awarded: number;
  updated_stats: PlayerStats;
}

export interface LikertSummary {
  statement_id: string;
  counts: number[];
  n: number;
  mean: number | null;
  median: number | null;
}

export interface Report {
  scenario_id: string;
  generated_at: string;
  likert: LikertSummary[];
  mood_distribution: Record<string, { count: number; fraction: number }>;
  vision_count: number;
  response_count: number;
  distinct_participants: number;
  overall_guess_accuracy: number | null;
}

export interface SessionInfo {
  session_token: string;
  user_id: string;
  role: 'citizen' | 'policymaker';
  issued_at: string;
  expires_at: string;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public details?: unknown,
  ) {
    super(message);
  }
}

type FetchLike = typeof fetch;

export class ApiClient {
  token: string | null = null;

  constructor(
    private baseUrl: string = '',
    private fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown, opts?: { adminKey?: string }): Promise<T> {
    const mutating = method !== 'GET';
    if (mutating && !this.token && path !== '/api/sessions') {
      // hard stop: a missing token must never produce a mutating request
      throw new ApiError(0, 'no_session', 'not signed in');
    }
    const headers: Record<string, string> = { 'Content-Type': 'application/json' };
    if (this.token) headers['Authorization'] = `Bearer ${this.token}`;
    if (opts?.adminKey) headers['X-Admin-Key'] = opts.adminKey;
    const response = await this.fetchFn(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) {
      throw new ApiError(
        response.status,
        (payload as any).code ?? 'error',
        (payload as any).message ?? response.statusText,
        (payload as any).details,
      );
    }
    return payload as T;
  }

  createSession(handle: string, role?: string, adminKey?: string): Promise<SessionInfo> {
    return this.request('POST', '/api/sessions', { handle, role }, { adminKey });
  }

  moodCatalog(): Promise<MoodInfo[]> {
    return this.request('GET', '/api/moods');
  }

  listScenarios(status?: string): Promise<Scenario[]> {
    const query = status ? `?status=${encodeURIComponent(status)}` : '';
    return this.request('GET', `/api/scenarios${query}`);
  }

  getScenario(id: string): Promise<Scenario> {
    return this.request('GET', `/api/scenarios/${id}`);
  }

  createScenario(title: string, description: string, statements: string[]): Promise<Scenario> {
    return this.request('POST', '/api/scenarios', { title, description, statements });
  }

  setScenarioStatus(id: string, status: string): Promise<Scenario> {
    return this.request('PATCH', `/api/scenarios/${id}/status`, { status });
  }

  getSurvey(scenarioId: string): Promise<{ scenario_id: string; statements: Statement[] }> {
    return this.request('GET', `/api/scenarios/${scenarioId}/survey`);
  }

  submitSurvey(scenarioId: string, answers: Record<string, number>): Promise<unknown> {
    return this.request('POST', `/api/scenarios/${scenarioId}/survey-responses`, { answers });
  }

  searchImages(q: string, page = 1, perPage = 12): Promise<ImagePage> {
    const query = `?q=${encodeURIComponent(q)}&page=${page}&per_page=${perPage}`;
    return this.request('GET', `/api/images${query}`);
  }

  createVision(
    scenarioId: string,
    body: { caption: string; mood: string; image?: ImageRef; image_url?: string },
  ): Promise<Vision> {
    return this.request('POST', `/api/scenarios/${scenarioId}/visions`, body);
  }

  feed(scenarioId: string, page = 1, pageSize = 20): Promise<FeedPage> {
    return this.request('GET', `/api/scenarios/${scenarioId}/visions?page=${page}&page_size=${pageSize}`);
  }

  nextChallenge(scenarioId: string): Promise<Challenge> {
    return this.request('GET', `/api/scenarios/${scenarioId}/game/next`);
  }

  submitGuess(visionId: string, guessedMood: string): Promise<GuessResult> {
    return this.request('POST', '/api/guesses', { vision_id: visionId, guessed_mood: guessedMood });
  }

  myStats(scenarioId: string): Promise<PlayerStats> {
    return this.request('GET', `/api/users/me/stats?scenario=${encodeURIComponent(scenarioId)}`);
  }

  report(scenarioId: string): Promise<Report> {
    return this.request('GET', `/api/scenarios/${scenarioId}/report`);
  }
}

// Components depend on this narrow view so tests can hand in plain objects.
export type Api = Pick<
  ApiClient,
  | 'createSession'
  | 'moodCatalog'
  | 'listScenarios'
  | 'getScenario'
  | 'createScenario'
  | 'setScenarioStatus'
  | 'getSurvey'
  | 'submitSurvey'
  | 'searchImages'
  | 'createVision'
  | 'feed'
  | 'nextChallenge'
  | 'submitGuess'
  | 'myStats'
  | 'report'
>;
