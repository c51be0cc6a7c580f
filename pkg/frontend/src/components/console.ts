import type { Api, MoodInfo, Scenario } from '../api';
import { el, clear } from '../dom';
import { reportView } from './reportView';

// Policymaker console: build a scenario (orderable statement list), publish it
// after confirmation, and read its report.
export function policymakerConsole(root: HTMLElement, api: Api, catalog: MoodInfo[]): void {
  const statements: string[] = [];
  const status = el('p', { class: 'console-status', text: '' });
  const statementList = el('ol', { class: 'statement-list' });
  const scenarioList = el('div', { class: 'scenario-list' });
  const reportSlot = el('div', { class: 'report-slot' });

  const title = el('input', { type: 'text', placeholder: 'Scenario title', maxlength: '120' }) as HTMLInputElement;
  const description = el('textarea', { placeholder: 'Describe the topic…', maxlength: '2000' }) as HTMLTextAreaElement;
  const statementInput = el('input', { type: 'text', placeholder: 'Add a survey statement…', maxlength: '500' }) as HTMLInputElement;

  function renderStatements(): void {
    clear(statementList);
    statements.forEach((text, index) => {
      statementList.append(
        el('li', {},
          el('span', { class: 'statement-text', text }),
          el('button', { type: 'button', text: '↑', title: 'move up',
            onclick: () => { if (index > 0) { [statements[index - 1], statements[index]] = [statements[index], statements[index - 1]]; renderStatements(); } } }),
          el('button', { type: 'button', text: '↓', title: 'move down',
            onclick: () => { if (index < statements.length - 1) { [statements[index + 1], statements[index]] = [statements[index], statements[index + 1]]; renderStatements(); } } }),
          el('button', { type: 'button', text: '✕', title: 'remove',
            onclick: () => { statements.splice(index, 1); renderStatements(); } }),
        ),
      );
    });
  }

  async function refreshScenarios(): Promise<void> {
    try {
      const scenarios = await api.listScenarios();
      clear(scenarioList);
      for (const scenario of scenarios) scenarioList.append(scenarioRow(scenario));
    } catch (error) {
      status.textContent = error instanceof Error ? error.message : 'cannot list scenarios';
    }
  }

  function scenarioRow(scenario: Scenario): HTMLElement {
    const actions = el('span', { class: 'scenario-actions' });
    if (scenario.status === 'draft') {
      actions.append(
        el('button', { type: 'button', class: 'publish', text: 'Publish…',
          onclick: async () => {
            // statements freeze on publish, so ask first
            if (!window.confirm('Publish this scenario? Statements cannot change afterwards.')) return;
            try {
              await api.setScenarioStatus(scenario.scenario_id, 'published');
              status.textContent = `Published "${scenario.title}".`;
              void refreshScenarios();
            } catch (error) {
              status.textContent = error instanceof Error ? error.message : 'publish failed';
            }
          } }),
      );
    } else {
      actions.append(
        el('button', { type: 'button', class: 'show-report', text: 'Report',
          onclick: async () => {
            try {
              const report = await api.report(scenario.scenario_id);
              clear(reportSlot).append(reportView(report, catalog));
            } catch (error) {
              status.textContent = error instanceof Error ? error.message : 'report failed';
            }
          } }),
      );
    }
    return el('p', { class: `scenario-row status-${scenario.status}` },
      el('strong', { text: scenario.title }),
      el('span', { class: 'status-tag', text: ` [${scenario.status}] ` }),
      actions,
    );
  }

  clear(root).append(
    el('section', { class: 'console' },
      el('h2', { text: 'Scenario builder' }),
      el('div', { class: 'scenario-form' },
        title,
        description,
        el('div', { class: 'statement-row' },
          statementInput,
          el('button', { type: 'button', class: 'add-statement', text: 'Add',
            onclick: () => {
              const text = statementInput.value.trim();
              if (!text) return;
              statements.push(text);
              statementInput.value = '';
              renderStatements();
            } }),
        ),
        statementList,
        el('button', { type: 'button', class: 'primary create-scenario', text: 'Create draft',
          onclick: async () => {
            try {
              await api.createScenario(title.value, description.value, statements);
              status.textContent = `Draft "${title.value}" created.`;
              title.value = '';
              description.value = '';
              statements.length = 0;
              renderStatements();
              void refreshScenarios();
            } catch (error) {
              // server-side validation (e.g. empty title) surfaces inline
              status.textContent = error instanceof Error ? error.message : 'creation failed';
            }
          } }),
        status,
      ),
      el('h2', { text: 'Your scenarios' }),
      scenarioList,
      reportSlot,
    ),
  );
  void refreshScenarios();
}
