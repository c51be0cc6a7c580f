import './styles.css';
import { ApiClient } from './api';
import { el, clear } from './dom';
import { store } from './store';
import { surveyWizard } from './components/surveyWizard';
import { visionCreator } from './components/visionCreator';
import { feed } from './components/feed';
import { guessingView } from './components/guessingView';
import { policymakerConsole } from './components/console';

function apiBase(): string {
  const override = (window as { CIVICMOOD_API_BASE?: string }).CIVICMOOD_API_BASE;
  return override ?? import.meta.env.VITE_API_BASE ?? '';
}

const api = new ApiClient(apiBase());
const root = document.getElementById('app')!;
let stopFeed: (() => void) | null = null;

function navigate(hash: string): void {
  window.location.hash = hash;
}

function renderLogin(): void {
  const handle = el('input', { type: 'text', placeholder: 'Pick a handle', maxlength: '32' }) as HTMLInputElement;
  const adminKey = el('input', { type: 'password', placeholder: 'Admin key' }) as HTMLInputElement;
  const asPolicymaker = el('input', { type: 'checkbox' }) as HTMLInputElement;
  const status = el('p', { class: 'error', text: '' });
  const adminRow = el('label', { class: 'admin-row', hidden: true }, 'Admin key ', adminKey);
  asPolicymaker.addEventListener('change', () => { adminRow.hidden = !asPolicymaker.checked; });

  clear(root).append(
    el('section', { class: 'login' },
      el('h1', { text: 'civicmood' }),
      el('p', { text: 'Join the conversation: answer the survey, share a vision, guess how others felt.' }),
      el('form', { onsubmit: async (event: Event) => {
        event.preventDefault();
        try {
          const role = asPolicymaker.checked ? 'policymaker' : 'citizen';
          const session = await api.createSession(handle.value, role, asPolicymaker.checked ? adminKey.value : undefined);
          api.token = session.session_token;
          const catalog = await api.moodCatalog();
          store.set({ sessionToken: session.session_token, role: session.role, handle: handle.value, moodCatalog: catalog });
          navigate(session.role === 'policymaker' ? '#/console' : '#/scenarios');
        } catch (error) {
          status.textContent = error instanceof Error ? error.message : 'sign-in failed';
        }
      } },
        handle,
        el('label', {}, asPolicymaker, ' I am a policymaker'),
        adminRow,
        el('button', { class: 'primary', type: 'submit', text: 'Start' }),
        status,
      ),
    ),
  );
}

async function renderScenarioList(): Promise<void> {
  const list = el('div', { class: 'scenario-cards' });
  clear(root).append(el('section', {}, el('h1', { text: 'Open scenarios' }), list));
  try {
    const scenarios = await api.listScenarios('published');
    if (!scenarios.length) list.append(el('p', { text: 'Nothing to discuss yet. Check back soon.' }));
    for (const scenario of scenarios) {
      list.append(
        el('article', { class: 'scenario-card' },
          el('h2', { text: scenario.title }),
          el('p', { text: scenario.description }),
          el('button', { class: 'primary', type: 'button', text: 'Take part',
            onclick: () => { store.set({ activeScenarioId: scenario.scenario_id }); navigate(`#/scenario/${scenario.scenario_id}`); } }),
        ),
      );
    }
  } catch (error) {
    list.append(el('p', { class: 'error', text: (error as Error).message }));
  }
}

async function renderScenario(scenarioId: string): Promise<void> {
  const state = store.get();
  const body = el('div', { class: 'stage-body' });
  const tabs = el('nav', { class: 'stage-tabs' });
  const stages: Array<[string, () => void]> = [
    ['Survey', () => showSurvey()],
    ['Create', () => showCreator()],
    ['Feed', () => showFeed()],
    ['Play', () => showGame()],
  ];
  for (const [label, show] of stages) {
    tabs.append(el('button', { type: 'button', 'data-tab': label.toLowerCase(), text: label,
      onclick: () => { stopPolling(); show(); } }));
  }
  const scenario = await api.getScenario(scenarioId);
  clear(root).append(
    el('section', { class: 'stage' },
      el('h1', { text: scenario.title }),
      el('p', { text: scenario.description }),
      tabs,
      body,
    ),
  );

  function stopPolling(): void {
    if (stopFeed) { stopFeed(); stopFeed = null; }
  }

  function showSurvey(): void {
    surveyWizard(body, api, scenarioId, scenario.statements, () => showCreator());
  }
  function showCreator(): void {
    visionCreator(body, api, scenarioId, state.moodCatalog, () => showFeed());
  }
  function showFeed(): void {
    stopFeed = feed(body, api, scenarioId);
  }
  function showGame(): void {
    guessingView(body, api, scenarioId, state.moodCatalog, () => showFeed());
  }

  showSurvey();
}

function renderConsole(): void {
  if (store.get().role !== 'policymaker') {
    navigate('#/scenarios');
    return;
  }
  policymakerConsole(root, api, store.get().moodCatalog);
}

function route(): void {
  const state = store.get();
  if (!state.sessionToken) {
    renderLogin();
    return;
  }
  const hash = window.location.hash || (state.role === 'policymaker' ? '#/console' : '#/scenarios');
  if (hash.startsWith('#/scenario/')) {
    void renderScenario(hash.slice('#/scenario/'.length));
  } else if (hash === '#/console') {
    renderConsole();
  } else {
    void renderScenarioList();
  }
}

window.addEventListener('hashchange', route);
route();
