import type { Api, Statement } from '../api';
import { ApiError } from '../api';
import { el, clear } from '../dom';

const LEVEL_LABELS = [
  'strongly disagree',
  'disagree',
  'neither agree nor disagree',
  'agree',
  'strongly agree',
];

// One Likert row per statement; the submit button stays disabled until every
// statement has an answer. A duplicate_response from the server means the
// participant already took this survey, so we note it and move on.
export function surveyWizard(
  root: HTMLElement,
  api: Api,
  scenarioId: string,
  statements: Statement[],
  onDone: () => void,
): void {
  const answers = new Map<string, number>();

  const status = el('p', { class: 'wizard-status', text: '' });
  const submit = el('button', {
    class: 'primary',
    type: 'button',
    disabled: true,
    text: 'Submit survey',
    onclick: async () => {
      submit.disabled = true;
      try {
        await api.submitSurvey(scenarioId, Object.fromEntries(answers));
        status.textContent = 'Thanks! Your starting opinion is recorded.';
        onDone();
      } catch (error) {
        if (error instanceof ApiError && error.code === 'duplicate_response') {
          status.textContent = 'Already submitted earlier; moving on.';
          onDone();
          return;
        }
        status.textContent = error instanceof Error ? error.message : 'submission failed';
        submit.disabled = false;
      }
    },
  });

  const sync = () => {
    submit.disabled = answers.size !== statements.length;
  };

  const rows = statements.map((statement) => {
    const options = LEVEL_LABELS.map((label, index) =>
      el(
        'label',
        { class: 'likert-option' },
        el('input', {
          type: 'radio',
          name: `likert-${statement.statement_id}`,
          value: String(index + 1),
          onchange: () => {
            answers.set(statement.statement_id, index + 1);
            sync();
          },
        }),
        el('span', { text: label }),
      ),
    );
    return el(
      'fieldset',
      { class: 'likert-row', 'data-statement': statement.statement_id },
      el('legend', { text: statement.text }),
      el('div', { class: 'likert-options' }, ...options),
    );
  });

  clear(root).append(
    el(
      'form',
      { class: 'survey-wizard', onsubmit: (event: Event) => event.preventDefault() },
      el('h2', { text: 'Before you start: where do you stand?' }),
      ...rows,
      submit,
      status,
    ),
  );
}
